"""Degree-3^n covers of Hirzebruch's ball quotient and their invariants.

A cover is fixed by ``(n, j)``: the homomorphism ``Z^4 -> Z/3^n`` sending
``v1, v2 -> 1`` and ``v3, v4 -> j``.  Everything is computed from lattice and
coset data:

* the 3^n blown-up points of the covering abelian surface are the elements
  of the deck group Z/3^n;
* a boundary curve T with image subgroup H lifts to one component per coset
  ``g + H``, and that component passes through exactly the points of the coset.

With these conventions the cusp count, boundary self-intersections and the
log Chern numbers are all exact integer bookkeeping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple

from .cyclic import CyclicSubgroup, coset_reps, subgroup_closure, subgroup_intersect
from .eisenstein import CurveLabel, curve_subgroup
from .errors import CapExceeded, DisjointnessViolation, VerificationFailure
from .zlattice import IntMatrix, LatticeBasis, apply_map, hnf, kernel_lattice, lattice_equal

MAX_N = 12
SCAN_MAX_N = 8

CURVES = (CurveLabel.T0, CurveLabel.TINF, CurveLabel.T1, CurveLabel.TZETA)

# Euler numbers of A = E x E and of an elliptic curve
EULER_ABELIAN_SURFACE = 0
EULER_ELLIPTIC_CURVE = 0


def check_cap(n: int, max_n: int) -> None:
    if n > max_n:
        raise CapExceeded(f"n = {n} exceeds cap {max_n}")


@dataclass(frozen=True)
class CoverSpec:
    n: int
    j: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"n must be non-negative, got {self.n}")
        if not 0 <= self.j < 3**self.n:
            raise ValueError(f"j must lie in [0, 3^{self.n}), got {self.j}")

    @property
    def degree(self) -> int:
        return 3**self.n

    @property
    def images(self) -> tuple[int, int, int, int]:
        """Images of v1..v4 in Z/3^n, with the generator written as 1."""
        m = self.degree
        return (1 % m, 1 % m, self.j % m, self.j % m)

    def push(self, v) -> int:
        """Image of a vector of Z^4 in Z/3^n."""
        return sum(a * b for a, b in zip(v, self.images)) % self.degree


@dataclass(frozen=True)
class CuspReport:
    spec: CoverSpec
    per_curve: dict[CurveLabel, int]
    total: int
    degree: int
    connected: bool

    def counts(self) -> tuple[int, int, int, int]:
        return tuple(self.per_curve[c] for c in CURVES)


@dataclass(frozen=True)
class BoundaryComponent:
    curve: CurveLabel
    coset_rep: int
    points_on_component: int
    self_intersection: int


@dataclass(frozen=True)
class BoundaryReport:
    spec: CoverSpec
    components: tuple[BoundaryComponent, ...]
    disjoint: bool
    # curve pair -> intersection number of one lift of each, before blowing up
    lattice_intersections: dict[tuple[CurveLabel, CurveLabel], int] = field(repr=False)

    @property
    def self_intersection_sum(self) -> int:
        return sum(c.self_intersection for c in self.components)


@dataclass(frozen=True)
class LogChernReport:
    c1bar_sq: int
    c2bar: int
    bmy_equal: bool


class FamilyMember(NamedTuple):
    j: int
    cusps: CuspReport
    chern: LogChernReport


@dataclass(frozen=True)
class FamilyCertificate:
    n: int
    blowup_points: int
    members: tuple[FamilyMember, ...]
    pairwise_distinct: bool


def listed_kernel_generators(spec: CoverSpec) -> list[tuple[int, int, int, int]]:
    """3^n v1, v1 - v2, v3 - v4 and j v1 - v3."""
    return [
        (spec.degree, 0, 0, 0),
        (1, -1, 0, 0),
        (0, 0, 1, -1),
        (spec.j, 0, -1, 0),
    ]


def kernel_of_sigma(spec: CoverSpec, max_n: int = MAX_N) -> LatticeBasis:
    check_cap(spec.n, max_n)
    kernel = kernel_lattice(spec.images, spec.degree)
    listed = hnf(listed_kernel_generators(spec))
    if not lattice_equal(kernel, listed):
        raise VerificationFailure(
            f"kernel of sigma for {spec} differs from the span of its listed generators"
        )
    return kernel


def curve_image(spec: CoverSpec, label: CurveLabel) -> CyclicSubgroup:
    return subgroup_closure(spec.degree, [spec.push(g) for g in curve_subgroup(label)])


def cusp_report(spec: CoverSpec, max_n: int = MAX_N) -> CuspReport:
    """Cusps of the cover: one per lift of each boundary curve.

    The lifts of a curve correspond to the cosets of its image subgroup, so
    each count is an index.
    """
    check_cap(spec.n, max_n)
    per_curve = {c: curve_image(spec, c).index for c in CURVES}
    connected = subgroup_closure(spec.degree, spec.images).is_full
    return CuspReport(
        spec=spec,
        per_curve=per_curve,
        total=sum(per_curve.values()),
        degree=spec.degree,
        connected=connected,
    )


def cusp_count_formula(spec: CoverSpec) -> int:
    if spec.n == 0:
        return 4
    m, j = spec.degree, spec.j
    if j % 3 == 1:
        return 6
    if j % 3 == 2:
        return 3 + math.gcd(j + 1, m)
    return 3 + math.gcd(j, m)


def shear_matrix(r: int) -> IntMatrix:
    """The map (z, w) -> (z + r w, w) on Z^4: v3 -> r v1 + v3, v4 -> r v2 + v4."""
    return IntMatrix.from_rows(
        [
            [1, 0, r, 0],
            [0, 1, 0, r],
            [0, 0, 1, 0],
            [0, 0, 0, 1],
        ]
    )


def shear_target(spec: CoverSpec, r: int) -> int:
    return (spec.j - r) % spec.degree


def verify_shear(spec: CoverSpec, r: int, max_n: int = MAX_N) -> bool:
    """Check that the shear by ``r`` carries K_{n,j} onto K_{n, j-r}."""
    f = shear_matrix(r)
    if f.det() != 1:
        return False
    image = apply_map(f, kernel_of_sigma(spec, max_n=max_n))
    target = kernel_of_sigma(CoverSpec(spec.n, shear_target(spec, r)), max_n=max_n)
    return lattice_equal(image, target)


def _lifted_curve_lattice(spec: CoverSpec, label: CurveLabel) -> list[list[int]]:
    """Basis of pi_1(T) intersected with the kernel lattice."""
    g1, g2 = curve_subgroup(label)
    sub = kernel_lattice((spec.push(g1), spec.push(g2)), spec.degree)
    return [[c1 * x + c2 * y for x, y in zip(g1, g2)] for c1, c2 in sub.rows()]


def lift_intersection_number(spec: CoverSpec, a: CurveLabel, b: CurveLabel) -> int:
    """Intersection number of a lift of ``a`` with a lift of ``b`` on the cover.

    On the torus C^2/K two subtori with transverse tangent lines and lattices
    La, Lb meet in [K : La + Lb] points.  Translation does not change this.
    """
    stacked = IntMatrix.from_rows(_lifted_curve_lattice(spec, a) + _lifted_curve_lattice(spec, b))
    return abs(stacked.det()) // spec.degree


def _coset_overlap(m: int, g: int, ha: CyclicSubgroup, h: int, hb: CyclicSubgroup) -> int:
    """Size of (g + ha) & (h + hb) inside Z/m."""
    if (g - h) % math.gcd(ha.generator, hb.generator):
        return 0
    return subgroup_intersect(ha, hb).order


def boundary_report(spec: CoverSpec, max_n: int = MAX_N) -> BoundaryReport:
    check_cap(spec.n, max_n)
    m = spec.degree
    images = {c: curve_image(spec, c) for c in CURVES}
    components = tuple(
        BoundaryComponent(
            curve=c,
            coset_rep=rep,
            points_on_component=images[c].order,
            self_intersection=-images[c].order,
        )
        for c in CURVES
        for rep in coset_reps(images[c]).representatives
    )

    numbers = {}
    for a, b in combinations(CURVES, 2):
        numbers[a, b] = number = lift_intersection_number(spec, a, b)
        for g in coset_reps(images[a]).representatives:
            for h in coset_reps(images[b]).representatives:
                shared = _coset_overlap(m, g, images[a], h, images[b])
                if number != shared:
                    raise DisjointnessViolation(
                        f"{spec}: lifts {a.value}+{g} and {b.value}+{h} meet in "
                        f"{number} points but share only {shared} blown-up points"
                    )

    report = BoundaryReport(spec, components, True, numbers)
    if report.self_intersection_sum != -4 * m:
        raise VerificationFailure(
            f"{spec}: boundary self-intersections sum to {report.self_intersection_sum}"
        )
    return report


def log_chern(spec: CoverSpec, max_n: int = MAX_N) -> LogChernReport:
    """Log Chern numbers of the blown-up cover with its boundary divisor.

    On the blowup the canonical class is K = sum E_p, and each lift C of a
    boundary curve has proper transform C - sum_{p in C} E_p.  Expanding
    (K + D)^2 uses E_p^2 = -1, C.E_p = 0, C^2 = 0 and C.C' = number of shared
    points of the two cosets.
    """
    check_cap(spec.n, max_n)
    m = spec.degree
    images = {c: curve_image(spec, c) for c in CURVES}
    reps = {c: coset_reps(images[c]).representatives for c in CURVES}

    # K + D = sum_C C + sum_p (1 - #{C through p}) E_p
    through = [0] * m
    for c in CURVES:
        for g in reps[c]:
            for p in range(g, m, images[c].generator):
                through[p] += 1

    curve_pairs = 0
    for a, b in combinations(CURVES, 2):
        for g in reps[a]:
            for h in reps[b]:
                curve_pairs += _coset_overlap(m, g, images[a], h, images[b])
    c1bar_sq = 2 * curve_pairs - sum((1 - t) ** 2 for t in through)

    n_components = sum(len(r) for r in reps.values())
    euler_blowup = m * EULER_ABELIAN_SURFACE + m
    c2bar = euler_blowup - n_components * EULER_ELLIPTIC_CURVE
    return LogChernReport(c1bar_sq, c2bar, c1bar_sq == 3 * c2bar)


def family_search(n: int, max_n: int = SCAN_MAX_N) -> FamilyCertificate:
    """Covers with pairwise distinct cusp counts and a common compactification.

    For each cusp total reached by some j, keeps the smallest such j; members
    come out sorted by decreasing total.
    """
    if n < 1:
        raise ValueError("family_search needs n >= 1")
    check_cap(n, max_n)
    first: dict[int, int] = {}
    for j in range(3**n):
        first.setdefault(cusp_count_formula(CoverSpec(n, j)), j)

    expected = {3 + 3**k for k in range(1, n + 1)}
    if set(first) != expected:
        raise VerificationFailure(f"n = {n}: cusp totals {sorted(first)}, expected {sorted(expected)}")

    single_cap = max(max_n, MAX_N)
    members = []
    for total in sorted(first, reverse=True):
        spec = CoverSpec(n, first[total])
        members.append(
            FamilyMember(
                spec.j,
                cusp_report(spec, max_n=single_cap),
                log_chern(spec, max_n=single_cap),
            )
        )
    totals = [mem.cusps.total for mem in members]
    return FamilyCertificate(
        n=n,
        blowup_points=3**n,
        members=tuple(members),
        pairwise_distinct=len(set(totals)) == len(totals),
    )
