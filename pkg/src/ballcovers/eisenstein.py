"""Eisenstein integers Z[rho] and the four boundary curves of E x E.

``rho`` is a primitive cube root of unity, so ``rho**2 = -rho - 1``, and the
sixth root of unity ``zeta = e^{i pi/3}`` is the ring element ``1 + rho``.
An element ``a + b*rho`` is stored as the pair ``(a, b)``.

The fundamental group of ``A = E x E`` is ``Z[rho]^2``, identified with Z^4
through the basis

    v1 = (1, 0)    v2 = (rho, 0)    v3 = (0, 1)    v4 = (0, rho)

so a vector ``(a1, b1, a2, b2)`` is the pair ``(a1 + b1 rho, a2 + b2 rho)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import CapExceeded
from .zlattice import LatticeBasis, hnf, kernel_lattice, lattice_equal, row_hnf

DEFAULT_MAX_N = 12


@dataclass(frozen=True)
class EisInt:
    a: int
    b: int

    def __add__(self, other: EisInt) -> EisInt:
        return EisInt(self.a + other.a, self.b + other.b)

    def __sub__(self, other: EisInt) -> EisInt:
        return EisInt(self.a - other.a, self.b - other.b)

    def __neg__(self) -> EisInt:
        return EisInt(-self.a, -self.b)

    def __mul__(self, other: EisInt) -> EisInt:
        return eis_mul(self, other)

    def __pow__(self, k: int) -> EisInt:
        if k < 0:
            raise ValueError("negative powers are not defined in Z[rho]")
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def norm(self) -> int:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def __str__(self) -> str:
        return f"{self.a}{self.b:+}ρ"


def eis_mul(x: EisInt, y: EisInt) -> EisInt:
    # (a + b rho)(c + d rho) = ac + (ad + bc) rho + bd rho^2, rho^2 = -1 - rho
    a, b, c, d = x.a, x.b, y.a, y.b
    return EisInt(a * c - b * d, a * d + b * c - b * d)


ZERO = EisInt(0, 0)
ONE = EisInt(1, 0)
RHO = EisInt(0, 1)
ZETA = EisInt(1, 1)


class CurveLabel(enum.Enum):
    """The curves w = 0, z = 0, w = z and w = zeta z on E x E."""

    T0 = "T0"
    TINF = "Tinf"
    T1 = "T1"
    TZETA = "Tzeta"

    @property
    def slope(self) -> EisInt | None:
        """Slope ``s`` of ``w = s z``; None for the vertical curve ``z = 0``."""
        return _SLOPES[self]


_SLOPES = {
    CurveLabel.T0: ZERO,
    CurveLabel.TINF: None,
    CurveLabel.T1: ONE,
    CurveLabel.TZETA: ZETA,
}

# pi_1 of each curve as a subgroup of Z^4, as it is usually written down.
LISTED_CURVE_GENERATORS: dict[CurveLabel, tuple[tuple[int, ...], tuple[int, ...]]] = {
    CurveLabel.T0: ((1, 0, 0, 0), (0, 1, 0, 0)),
    CurveLabel.TINF: ((0, 0, 1, 0), (0, 0, 0, 1)),
    CurveLabel.T1: ((1, 0, 1, 0), (0, 1, 0, 1)),
    CurveLabel.TZETA: ((1, 0, 1, 1), (0, 1, -1, 0)),
}


def _pair(z: EisInt, w: EisInt) -> tuple[int, int, int, int]:
    return (z.a, z.b, w.a, w.b)


def curve_subgroup(label: CurveLabel) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Generators in Z^4 of pi_1 of the curve, derived from its slope.

    The curve ``w = s z`` lifts to the complex line through ``(1, s)``; its
    lattice points are ``(lam, s*lam)`` for ``lam`` in Z[rho], generated by
    ``lam = 1`` and ``lam = rho``.
    """
    s = label.slope
    if s is None:
        return _pair(ZERO, ONE), _pair(ZERO, RHO)
    return _pair(ONE, s * ONE), _pair(RHO, s * RHO)


def compare_generators(label: CurveLabel, listed=None) -> tuple[bool, list[tuple[tuple[int, ...], tuple[int, ...]]]]:
    """Compare slope-derived generators with a listed pair.

    Returns ``(same_lattice, diff)`` where ``diff`` pairs up derived and
    listed generators that differ literally.  A nonempty diff with
    ``same_lattice`` true means only the choice of generators differs.
    """
    if listed is None:
        listed = LISTED_CURVE_GENERATORS[label]
    derived = curve_subgroup(label)
    diff = [(d, l) for d, l in zip(derived, listed) if tuple(d) != tuple(l)]
    return row_hnf(derived, 4) == row_hnf(listed, 4), diff


def ideal_lattice(n: int) -> LatticeBasis:
    """(1 - rho)^n Z[rho] as a sublattice of Z^2 in (a, b) coordinates."""
    g = (ONE - RHO) ** n
    return hnf([(g.a, g.b), ((g * RHO).a, (g * RHO).b)], rank=2)


def ideal_kernel_verify(n: int, max_n: int = DEFAULT_MAX_N) -> bool:
    """Check that (1 - rho)^n Z[rho] is the kernel of Z[rho] -> Z/3^n, 1, rho -> 1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > max_n:
        raise CapExceeded(f"n = {n} exceeds cap {max_n}")
    return lattice_equal(ideal_lattice(n), kernel_lattice((1, 1), 3**n))


def ideal_kernel_report(n: int, max_n: int = DEFAULT_MAX_N) -> dict:
    """Both lattices behind :func:`ideal_kernel_verify`, with a separating vector.

    ``witness`` is a kernel vector outside the ideal (None when they agree).
    The kernel of a map onto a cyclic group is an ideal only when it is closed
    under multiplication by rho, which fails from n = 2 on.
    """
    equal = ideal_kernel_verify(n, max_n=max_n)
    ideal = ideal_lattice(n)
    kernel = kernel_lattice((1, 1), 3**n)
    witness = next((tuple(v) for v in kernel.rows() if not ideal.contains(v)), None)
    return {
        "n": n,
        "equal": equal,
        "ideal_basis": ideal.basis.tolist(),
        "kernel_basis": kernel.basis.tolist(),
        "ideal_index": ideal.index,
        "kernel_index": kernel.index,
        "witness": list(witness) if witness is not None else None,
    }
