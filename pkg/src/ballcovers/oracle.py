"""Brute-force recomputation of the cover invariants.

Nothing here uses gcd shortcuts, closed-form cusp counts or the slope
derivation of the curve subgroups.  Subgroups are closed by literal addition,
cosets are found by partitioning Z/m element by element, and kernels come from
scanning every residue vector.  The only shared piece is the HNF
canonicalizer, which turns a generating set into something comparable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .covers import CURVES, CoverSpec, CuspReport, LogChernReport
from .eisenstein import CurveLabel
from .errors import BudgetExceeded
from .zlattice import LatticeBasis, hnf

# generators of pi_1 of each boundary curve, written out by hand
_CURVE_GENERATORS = {
    CurveLabel.T0: ((1, 0, 0, 0), (0, 1, 0, 0)),
    CurveLabel.TINF: ((0, 0, 1, 0), (0, 0, 0, 1)),
    CurveLabel.T1: ((1, 0, 1, 0), (0, 1, 0, 1)),
    CurveLabel.TZETA: ((1, 0, 1, 1), (0, 1, -1, 0)),
}


@dataclass(frozen=True)
class ScanBudget:
    max_modulus: int = 729
    max_rank: int = 4

    def check_modulus(self, m: int) -> None:
        if m > self.max_modulus:
            raise BudgetExceeded(f"modulus {m} exceeds budget {self.max_modulus}")

    def check_scan(self, m: int, r: int) -> None:
        self.check_modulus(m)
        if r > self.max_rank:
            raise BudgetExceeded(f"rank {r} exceeds budget {self.max_rank}")


DEFAULT_BUDGET = ScanBudget()


def closure_by_enumeration(m: int, gens, budget: ScanBudget = DEFAULT_BUDGET) -> frozenset[int]:
    budget.check_modulus(m)
    steps = [g % m for g in gens]
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in steps:
                y = (x + g) % m
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def kernel_by_residue_scan(images, m: int, budget: ScanBudget = DEFAULT_BUDGET) -> LatticeBasis:
    r = len(images)
    budget.check_scan(m, r)
    gens = [
        x
        for x in itertools.product(range(m), repeat=r)
        if sum(a * b for a, b in zip(x, images)) % m == 0
    ]
    gens += [tuple(m * int(i == k) for i in range(r)) for k in range(r)]
    return hnf(gens, rank=r)


def _pushed(spec: CoverSpec, label: CurveLabel) -> list[int]:
    m = 3**spec.n
    images = (1, 1, spec.j, spec.j)
    return [sum(a * b for a, b in zip(g, images)) % m for g in _CURVE_GENERATORS[label]]


def coset_partition(m: int, subgroup: frozenset[int]) -> list[frozenset[int]]:
    remaining = set(range(m))
    cosets = []
    while remaining:
        x = min(remaining)
        coset = frozenset((x + h) % m for h in subgroup)
        remaining -= coset
        cosets.append(coset)
    return cosets


def lift_partitions(spec: CoverSpec, budget: ScanBudget = DEFAULT_BUDGET) -> dict[CurveLabel, list[frozenset[int]]]:
    """For each boundary curve, the blown-up points on each of its lifts."""
    m = 3**spec.n
    budget.check_modulus(m)
    return {
        c: coset_partition(m, closure_by_enumeration(m, _pushed(spec, c), budget))
        for c in CURVES
    }


def cusp_count_oracle(spec: CoverSpec, budget: ScanBudget = DEFAULT_BUDGET) -> CuspReport:
    m = 3**spec.n
    parts = lift_partitions(spec, budget)
    per_curve = {c: len(parts[c]) for c in CURVES}
    whole = closure_by_enumeration(m, (1, 1, spec.j, spec.j), budget)
    return CuspReport(
        spec=spec,
        per_curve=per_curve,
        total=sum(per_curve.values()),
        degree=m,
        connected=len(whole) == m,
    )


def cover_chern_oracle(spec: CoverSpec, budget: ScanBudget = DEFAULT_BUDGET) -> LogChernReport:
    """(K + D)^2 and e(X - D) from the literal point sets of every lift."""
    m = 3**spec.n
    parts = lift_partitions(spec, budget)
    lifts = [(c, pts) for c in CURVES for pts in parts[c]]
    square = 0
    for (ca, pa), (cb, pb) in itertools.product(lifts, repeat=2):
        if ca != cb:
            square += len(pa & pb)
    for p in range(m):
        on = sum(1 for _, pts in lifts if p in pts)
        square -= (1 - on) ** 2
    c2bar = m
    return LogChernReport(square, c2bar, square == 3 * c2bar)


def base_chern_oracle() -> LogChernReport:
    """Log Chern numbers of the blown-up E x E with the four curves, from first principles.

    Classes are ordered (T0, Tinf, T1, Tzeta, E) with T the total transforms.
    """
    classes = 5
    gram = [[0] * classes for _ in range(classes)]
    for a in range(4):
        for b in range(4):
            gram[a][b] = 1 if a != b else 0  # distinct curves meet once, at the origin
    gram[4][4] = -1
    canonical = [0, 0, 0, 0, 1]  # K = E
    boundary = [1, 1, 1, 1, -4]  # sum of proper transforms T - E
    log_canonical = [k + d for k, d in zip(canonical, boundary)]
    c1bar_sq = sum(
        log_canonical[a] * gram[a][b] * log_canonical[b]
        for a in range(classes)
        for b in range(classes)
    )
    euler_surface = 0 + 1  # e(A) plus one per blown-up point
    euler_boundary = 4 * 0
    c2bar = euler_surface - euler_boundary
    return LogChernReport(c1bar_sq, c2bar, c1bar_sq == 3 * c2bar)
