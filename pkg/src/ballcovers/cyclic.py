"""Subgroups and cosets of the cyclic group Z/m, written additively.

A multiplicative generator ``delta`` of Z/3^n corresponds to the residue 1,
so ``<delta^j>`` is the subgroup generated by ``j``.  Every subgroup of Z/m is
``<d>`` for a unique divisor ``d`` of ``m``; that divisor is the stored form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import ModulusMismatch


@dataclass(frozen=True)
class CyclicSubgroup:
    modulus: int
    generator: int  # divisor d of modulus; d == modulus is the trivial subgroup

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be at least 1")
        if self.generator < 1 or self.modulus % self.generator:
            raise ValueError(f"{self.generator} is not a divisor of {self.modulus}")

    @property
    def order(self) -> int:
        return self.modulus // self.generator

    @property
    def index(self) -> int:
        return self.generator

    @property
    def is_full(self) -> bool:
        return self.generator == 1

    def __contains__(self, k: int) -> bool:
        return k % self.generator == 0

    def elements(self) -> range:
        return range(0, self.modulus, self.generator)

    def __str__(self) -> str:
        return f"<{self.generator}> in Z/{self.modulus}"


@dataclass(frozen=True)
class CosetList:
    subgroup: CyclicSubgroup
    representatives: tuple[int, ...]

    def coset(self, rep: int) -> range:
        """Elements of ``rep + subgroup`` in increasing order."""
        s = self.subgroup
        return range(rep % s.generator, s.modulus, s.generator)


def subgroup_closure(m: int, gens: Iterable[int]) -> CyclicSubgroup:
    """Subgroup of Z/m generated by ``gens``: it is ``<gcd(m, *gens)>``."""
    return CyclicSubgroup(m, math.gcd(m, *gens))


def element_order(m: int, k: int) -> int:
    return m // math.gcd(m, k)


def subgroup_intersect(a: CyclicSubgroup, b: CyclicSubgroup) -> CyclicSubgroup:
    if a.modulus != b.modulus:
        raise ModulusMismatch(f"Z/{a.modulus} and Z/{b.modulus}")
    # lcm of two divisors of m already divides m
    return CyclicSubgroup(a.modulus, math.lcm(a.generator, b.generator))


def subgroup_sum(a: CyclicSubgroup, b: CyclicSubgroup) -> CyclicSubgroup:
    if a.modulus != b.modulus:
        raise ModulusMismatch(f"Z/{a.modulus} and Z/{b.modulus}")
    return CyclicSubgroup(a.modulus, math.gcd(a.generator, b.generator))


def coset_reps(s: CyclicSubgroup) -> CosetList:
    return CosetList(s, tuple(range(s.generator)))
