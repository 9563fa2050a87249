import random

import pytest

from ballcovers.cyclic import (
    CyclicSubgroup,
    coset_reps,
    element_order,
    subgroup_closure,
    subgroup_intersect,
    subgroup_sum,
)
from ballcovers.errors import ModulusMismatch
from ballcovers.oracle import closure_by_enumeration


def test_closure_examples():
    s = subgroup_closure(9, [0, 6])
    assert (s.generator, s.order, s.index) == (3, 3, 3)
    # T_zeta for n = 1, j = 1: generators 1 + 2j and 1 - j reduce to 0
    s = subgroup_closure(3, [(1 + 2) % 3, 0])
    assert s.generator == 3 and s.order == 1
    assert subgroup_closure(27, []).generator == 27


def test_element_order_examples():
    assert element_order(9, 6) == 3
    assert element_order(9, 0) == 1
    assert element_order(27, 8) == 27


def test_intersect_examples():
    assert subgroup_intersect(CyclicSubgroup(9, 3), CyclicSubgroup(9, 1)).generator == 3
    assert subgroup_intersect(CyclicSubgroup(9, 3), CyclicSubgroup(9, 9)).generator == 9
    assert subgroup_intersect(CyclicSubgroup(12, 2), CyclicSubgroup(12, 3)).generator == 6
    with pytest.raises(ModulusMismatch):
        subgroup_intersect(CyclicSubgroup(9, 3), CyclicSubgroup(3, 3))


def test_intersect_matches_elements():
    for m in range(1, 37):
        divisors = [d for d in range(1, m + 1) if m % d == 0]
        for a in divisors:
            for b in divisors:
                sa, sb = CyclicSubgroup(m, a), CyclicSubgroup(m, b)
                expected = set(sa.elements()) & set(sb.elements())
                assert set(subgroup_intersect(sa, sb).elements()) == expected
                total = {(x + y) % m for x in sa.elements() for y in sb.elements()}
                assert set(subgroup_sum(sa, sb).elements()) == total


def test_coset_reps_examples():
    assert coset_reps(CyclicSubgroup(3, 3)).representatives == (0, 1, 2)
    assert coset_reps(CyclicSubgroup(9, 1)).representatives == (0,)
    assert coset_reps(CyclicSubgroup(9, 3)).representatives == (0, 1, 2)


def test_rejects_non_divisor():
    with pytest.raises(ValueError):
        CyclicSubgroup(9, 2)
    with pytest.raises(ValueError):
        CyclicSubgroup(0, 1)


def test_modulus_one():
    s = subgroup_closure(1, [0, 0])
    assert s.is_full and s.order == 1 and s.index == 1
    assert coset_reps(s).representatives == (0,)


def test_closure_agrees_with_enumeration_exhaustive_small():
    for m in range(1, 28):
        for a in range(m):
            for b in range(m):
                assert set(subgroup_closure(m, [a, b]).elements()) == closure_by_enumeration(m, [a, b])


def test_closure_agrees_with_enumeration_random():
    rng = random.Random(7)
    for _ in range(600):
        m = rng.randint(1, 81)
        gens = [rng.randrange(m) for _ in range(rng.randint(0, 4))]
        s = subgroup_closure(m, gens)
        assert set(s.elements()) == closure_by_enumeration(m, gens)
        assert s.order * s.index == m


def test_element_order_by_repeated_addition():
    for m in range(1, 82):
        for k in range(m):
            steps, x = 1, k % m
            while x:
                x = (x + k) % m
                steps += 1
            assert element_order(m, k) == steps


def test_coset_reps_partition():
    for m in range(1, 82):
        for d in (d for d in range(1, m + 1) if m % d == 0):
            cosets = coset_reps(CyclicSubgroup(m, d))
            assert len(cosets.representatives) == d
            seen = []
            for rep in cosets.representatives:
                seen.extend(cosets.coset(rep))
            assert sorted(seen) == list(range(m))
