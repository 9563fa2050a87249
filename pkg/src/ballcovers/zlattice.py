"""Exact integer matrices and canonical bases of full-rank sublattices of Z^r.

Lattices are stored by rows in Hermite normal form: upper triangular, with
positive pivots on the diagonal and every entry above a pivot reduced into
``[0, pivot)``.  Two lattices are equal exactly when these bases agree entry
by entry, so lattice equality never needs anything beyond a tuple compare.

Python integers are unbounded, which gives exact arithmetic for free.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NotUnimodular, RankDeficient, RankMismatch


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``g = gcd(a, b) >= 0`` and ``s*a + t*b = g``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        object.__setattr__(
            self, "entries", tuple(operator.index(x) for x in self.entries)
        )

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [tuple(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("column count is required for an empty matrix")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls.from_rows(
            [[int(i == k) for k in range(n)] for i in range(n)], cols=n
        )

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_rows(
            [[self[i, j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError("incompatible shapes for matrix product")
        cols = [other.transpose().row(j) for j in range(other.cols)]
        return IntMatrix.from_rows(
            [
                [sum(a * b for a, b in zip(self.row(i), c)) for c in cols]
                for i in range(self.rows)
            ],
            cols=other.cols,
        )

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k]), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class LatticeBasis:
    """A full-rank sublattice of Z^rank, held by its canonical HNF basis.

    Construct through :func:`hnf` or :func:`kernel_lattice`; the constructor
    trusts its input.
    """

    rank: int
    basis: IntMatrix

    @property
    def index(self) -> int:
        """Index in Z^rank, the product of the pivots."""
        out = 1
        for i in range(self.rank):
            out *= self.basis[i, i]
        return out

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(self.basis[i, i] for i in range(self.rank))

    def rows(self) -> list[tuple[int, ...]]:
        return [self.basis.row(i) for i in range(self.rank)]

    def coordinates(self, v: Sequence[int]) -> tuple[int, ...] | None:
        """Integer coefficients of ``v`` in the basis, or None if ``v`` is not in the lattice."""
        if len(v) != self.rank:
            raise RankMismatch(f"vector of length {len(v)} in rank {self.rank}")
        v = list(v)
        coeffs = []
        for i in range(self.rank):
            q, rem = divmod(v[i], self.basis[i, i])
            if rem:
                return None
            coeffs.append(q)
            if q:
                row = self.basis.row(i)
                for k in range(i, self.rank):
                    v[k] -= q * row[k]
        return tuple(coeffs)

    def contains(self, v: Sequence[int]) -> bool:
        return self.coordinates(v) is not None


def _insert(pivots: dict[int, list[int]], v: list[int]) -> None:
    """Fold ``v`` into an echelon basis keyed by pivot column."""
    for c in range(len(v)):
        if v[c] == 0:
            continue
        row = pivots.get(c)
        if row is None:
            pivots[c] = v
            return
        a, b = row[c], v[c]
        g, s, t = xgcd(a, b)
        ag, bg = a // g, b // g
        pivots[c] = [s * x + t * y for x, y in zip(row, v)]
        v = [ag * y - bg * x for x, y in zip(row, v)]
    # v reduced to zero: it was already in the span


def _reduce(pivots: dict[int, list[int]]) -> None:
    cols = sorted(pivots)
    for k, c in enumerate(cols):
        if pivots[c][c] < 0:
            pivots[c] = [-x for x in pivots[c]]
        p = pivots[c][c]
        for above in cols[:k]:
            q = pivots[above][c] // p
            if q:
                pivots[above] = [x - q * y for x, y in zip(pivots[above], pivots[c])]


def row_hnf(vectors: Iterable[Sequence[int]], width: int) -> tuple[tuple[int, ...], ...]:
    """Canonical HNF rows of the span of ``vectors`` in Z^width, of any rank.

    Zero rows are dropped; two spans are equal iff the outputs are equal.
    """
    pivots: dict[int, list[int]] = {}
    for v in vectors:
        v = [operator.index(x) for x in v]
        if len(v) != width:
            raise ValueError(f"vector of length {len(v)} in Z^{width}")
        _insert(pivots, v)
        if len(pivots) == width:
            # keeps entry growth bounded by the pivots on long generator lists
            _reduce(pivots)
    _reduce(pivots)
    return tuple(tuple(pivots[c]) for c in sorted(pivots))


def hnf(generators: IntMatrix | Iterable[Sequence[int]], rank: int | None = None) -> LatticeBasis:
    """Canonical basis of the lattice spanned by the rows of ``generators``.

    Raises RankDeficient unless the rows span a lattice of full rank.
    """
    if isinstance(generators, IntMatrix):
        r = generators.cols
        vectors = [generators.row(i) for i in range(generators.rows)]
    else:
        vectors = list(generators)
        if rank is None:
            if not vectors:
                raise ValueError("rank is required for an empty generator list")
            rank = len(vectors[0])
        r = rank
    rows = row_hnf(vectors, r)
    if len(rows) < r:
        raise RankDeficient(f"generators span rank {len(rows)} < {r}")
    return LatticeBasis(r, IntMatrix.from_rows(rows, cols=r))


def kernel_lattice(images: Sequence[int], modulus: int) -> LatticeBasis:
    """Kernel of ``Z^r -> Z/modulus`` sending the i-th basis vector to ``images[i]``.

    Works by taking the integer kernel of the row ``(images..., modulus)`` and
    dropping the last coordinate.
    """
    if modulus < 1:
        raise ValueError("modulus must be at least 1")
    r = len(images)
    form = [operator.index(a) % modulus for a in images] + [modulus]
    size = r + 1
    # columns of `cols` stay a unimodular basis of Z^(r+1); track form . column
    cols = [[int(i == k) for i in range(size)] for k in range(size)]
    vals = list(form)
    lead = size - 1  # column holding the running gcd
    for k in range(size - 1):
        if vals[k] == 0:
            continue
        g, s, t = xgcd(vals[lead], vals[k])
        a, b = vals[lead] // g, vals[k] // g
        c_lead, c_k = cols[lead], cols[k]
        cols[lead] = [s * x + t * y for x, y in zip(c_lead, c_k)]
        cols[k] = [a * y - b * x for x, y in zip(c_lead, c_k)]
        vals[lead], vals[k] = g, 0
    gens = [c[:r] for i, c in enumerate(cols) if i != lead]
    gens += [[modulus * int(i == k) for i in range(r)] for k in range(r)]
    return hnf(gens, rank=r)


def apply_map(map: IntMatrix, lattice: LatticeBasis) -> LatticeBasis:
    """Image of ``lattice`` under the unimodular map acting on column vectors."""
    if map.rows != map.cols or map.rows != lattice.rank:
        raise RankMismatch(
            f"map is {map.rows}x{map.cols}, lattice has rank {lattice.rank}"
        )
    d = map.det()
    if abs(d) != 1:
        raise NotUnimodular(f"determinant {d}")
    return hnf(lattice.basis @ map.transpose())


def lattice_equal(a: LatticeBasis, b: LatticeBasis) -> bool:
    if a.rank != b.rank:
        raise RankMismatch(f"ranks {a.rank} and {b.rank}")
    return a.basis == b.basis
