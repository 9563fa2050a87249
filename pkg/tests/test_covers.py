import math

import pytest

from ballcovers.covers import (
    CURVES,
    CoverSpec,
    boundary_report,
    curve_image,
    cusp_count_formula,
    cusp_report,
    family_search,
    kernel_of_sigma,
    lift_intersection_number,
    listed_kernel_generators,
    log_chern,
    shear_matrix,
    shear_target,
    verify_shear,
)
from ballcovers.eisenstein import CurveLabel
from ballcovers.errors import CapExceeded
from ballcovers.oracle import cusp_count_oracle, cover_chern_oracle, lift_partitions
from ballcovers.zlattice import hnf, kernel_lattice, lattice_equal

T0, TINF, T1, TZETA = CURVES


def all_specs(max_n):
    return [CoverSpec(n, j) for n in range(max_n + 1) for j in range(3**n)]


def test_cover_spec_validation():
    with pytest.raises(ValueError):
        CoverSpec(1, 3)
    with pytest.raises(ValueError):
        CoverSpec(-1, 0)
    assert CoverSpec(0, 0).images == (0, 0, 0, 0)
    assert CoverSpec(2, 5).images == (1, 1, 5, 5)


@pytest.mark.parametrize(
    "n, j, expected",
    [
        (1, 1, [[1, 0, 0, 2], [0, 1, 0, 2], [0, 0, 1, 2], [0, 0, 0, 3]]),
        (0, 0, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
        (1, 0, [[1, 2, 0, 0], [0, 3, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
    ],
)
def test_kernel_of_sigma_examples(n, j, expected):
    assert kernel_of_sigma(CoverSpec(n, j)).basis.tolist() == expected


def test_kernel_of_sigma_cap():
    with pytest.raises(CapExceeded):
        kernel_of_sigma(CoverSpec(13, 0))
    assert kernel_of_sigma(CoverSpec(13, 5), max_n=13).index == 3**13


def test_kernel_beyond_64_bits():
    spec = CoverSpec(45, 3**44 + 7)
    k = kernel_of_sigma(spec, max_n=45)
    assert k.index == 3**45
    assert lattice_equal(k, hnf(listed_kernel_generators(spec)))


def test_curve_image_examples():
    s = curve_image(CoverSpec(2, 4), TZETA)
    assert (s.modulus, s.generator) == (9, 3)
    s = curve_image(CoverSpec(2, 8), T1)
    assert s.generator == 9
    for spec in all_specs(3):
        assert curve_image(spec, T0).is_full


def test_curve_images_closed_form():
    for spec in all_specs(4):
        m, j = spec.degree, spec.j
        assert curve_image(spec, TINF).generator == math.gcd(j, m)
        assert curve_image(spec, T1).generator == math.gcd(j + 1, m)
        assert curve_image(spec, TZETA).generator == math.gcd(1 + 2 * j, 1 - j, m)


@pytest.mark.parametrize(
    "n, j, counts, total",
    [
        (2, 4, (1, 1, 1, 3), 6),
        (2, 0, (1, 9, 1, 1), 12),
        (0, 0, (1, 1, 1, 1), 4),
    ],
)
def test_cusp_report_examples(n, j, counts, total):
    report = cusp_report(CoverSpec(n, j))
    assert report.counts() == counts
    assert report.total == total
    assert report.connected
    assert report.degree == 3**n


@pytest.mark.parametrize("n, j, total", [(2, 4, 6), (2, 8, 12), (2, 3, 6), (0, 0, 4)])
def test_cusp_count_formula_examples(n, j, total):
    assert cusp_count_formula(CoverSpec(n, j)) == total


def test_three_way_agreement():
    specs = all_specs(4)
    assert len(specs) == 121
    for spec in specs:
        report = cusp_report(spec)
        brute = cusp_count_oracle(spec)
        assert report.total == cusp_count_formula(spec) == brute.total
        assert report.per_curve == brute.per_curve
        assert report.total == sum(report.per_curve.values())
        assert report.per_curve[T0] == 1
        assert report.connected and brute.connected


def test_decomposed_formula():
    for spec in all_specs(4)[1:]:
        m, j = spec.degree, spec.j
        decomposed = 1 + math.gcd(j, m) + math.gcd(j + 1, m) + (3 if j % 3 == 1 else 1)
        assert cusp_count_formula(spec) == decomposed


def test_kernel_index_is_degree():
    for spec in all_specs(4):
        assert kernel_of_sigma(spec).index == spec.degree


def test_tzeta_image_bound():
    for spec in all_specs(5)[1:]:
        index = curve_image(spec, TZETA).index
        assert index == (3 if spec.j % 3 == 1 else 1)


@pytest.mark.parametrize("n, j, r, k", [(2, 0, 1, 8), (1, 2, 0, 2), (2, 1, 5, 5)])
def test_shear_target(n, j, r, k):
    assert shear_target(CoverSpec(n, j), r) == k


def test_shear_matrix_action():
    f = shear_matrix(3)
    assert f.det() == 1
    # columns are the images of v1..v4
    assert [tuple(f[i, 2] for i in range(4))] == [(3, 0, 1, 0)]
    assert [tuple(f[i, 3] for i in range(4))] == [(0, 3, 0, 1)]


def test_verify_shear_examples():
    assert verify_shear(CoverSpec(1, 2), 1)
    assert verify_shear(CoverSpec(2, 0), 1)
    for spec in all_specs(2):
        assert verify_shear(spec, 0)


def test_verify_shear_exhaustive():
    for spec in all_specs(3):
        for r in range(spec.degree):
            assert verify_shear(spec, r)


def test_verify_shear_negative_and_large_r():
    spec = CoverSpec(3, 5)
    assert verify_shear(spec, -4)
    assert verify_shear(spec, 10**6)


def test_wrong_shear_target_is_rejected():
    # the shear by 1 does not fix K_{1,2}
    k = kernel_of_sigma(CoverSpec(1, 2))
    from ballcovers.zlattice import apply_map

    assert not lattice_equal(apply_map(shear_matrix(1), k), k)


def test_boundary_report_n1_j1():
    b = boundary_report(CoverSpec(1, 1))
    assert [c.self_intersection for c in b.components] == [-3, -3, -3, -1, -1, -1]
    assert b.self_intersection_sum == -12
    assert b.disjoint


def test_boundary_report_base():
    b = boundary_report(CoverSpec(0, 0))
    assert [c.self_intersection for c in b.components] == [-1, -1, -1, -1]


def test_boundary_report_n2_j0():
    b = boundary_report(CoverSpec(2, 0))
    assert len(b.components) == 12
    assert b.self_intersection_sum == -36


def test_boundary_invariants():
    for spec in all_specs(4):
        b = boundary_report(spec)
        report = cusp_report(spec)
        assert len(b.components) == report.total
        assert b.self_intersection_sum == -4 * spec.degree
        parts = lift_partitions(spec)
        for c in CURVES:
            comps = [x for x in b.components if x.curve is c]
            assert len(comps) == report.per_curve[c]
            sizes = {x.points_on_component for x in comps}
            assert sizes == {len(p) for p in parts[c]}
            assert len(comps) * sizes.pop() == spec.degree
            assert all(x.self_intersection == -x.points_on_component for x in comps)


def test_lift_intersection_numbers_match_coset_overlaps():
    # computed from the lattice K alone, independent of the coset model
    for spec in all_specs(3):
        parts = lift_partitions(spec)
        for i, a in enumerate(CURVES):
            for b in CURVES[i + 1:]:
                number = lift_intersection_number(spec, a, b)
                overlaps = {len(p & q) for p in parts[a] for q in parts[b]}
                assert overlaps == {number}


@pytest.mark.parametrize("n, j, c1, c2", [(0, 0, 3, 1), (1, 1, 9, 3), (2, 4, 27, 9)])
def test_log_chern_examples(n, j, c1, c2):
    report = log_chern(CoverSpec(n, j))
    assert (report.c1bar_sq, report.c2bar, report.bmy_equal) == (c1, c2, True)


def test_log_chern_all_small_covers():
    for spec in all_specs(4):
        report = log_chern(spec)
        assert report.c1bar_sq - 3 * report.c2bar == 0
        assert report.c2bar == spec.degree
        assert report == cover_chern_oracle(spec)


@pytest.mark.parametrize(
    "n, members",
    [
        (1, [(0, 6)]),
        (2, [(0, 12), (1, 6)]),
        (3, [(0, 30), (8, 12), (1, 6)]),
        (5, [(0, 246), (80, 84), (26, 30), (8, 12), (1, 6)]),
    ],
)
def test_family_search(n, members):
    cert = family_search(n)
    assert [(m.j, m.cusps.total) for m in cert.members] == members
    assert cert.pairwise_distinct
    assert cert.blowup_points == 3**n
    assert all(m.chern.bmy_equal for m in cert.members)


def test_family_search_smallest_j_by_brute_force():
    for n in range(1, 5):
        best = {}
        for j in range(3**n):
            best.setdefault(cusp_count_oracle(CoverSpec(n, j)).total, j)
        cert = family_search(n)
        assert {m.cusps.total: m.j for m in cert.members} == best


def test_family_search_limits():
    with pytest.raises(ValueError):
        family_search(0)
    with pytest.raises(CapExceeded):
        family_search(9)


def test_log_chern_large_n():
    report = log_chern(CoverSpec(9, 0), max_n=12)
    assert report.bmy_equal and report.c2bar == 3**9
