"""Orbifold Riemann-Roch for numerical Q-Fano threefolds.

    chi(tA) = 1 + t(t+q)(2t+q)/12 * A^3 + t/(12q) * (-K.c2) + sum_P c_P(t i_P)

where ``-K = qA`` and ``i_P`` is the local class of ``A`` measured in units of
``K`` at ``P``.  All arithmetic is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterator, Sequence

from .singularities import Basket, SingularityType


class InconsistentCandidate(ValueError):
    """Numerical data that cannot come from a Q-Fano threefold."""


@lru_cache(maxsize=None)
def _correction(r: int, b: int, i: int) -> Fraction:
    s = Fraction(-i * (r * r - 1), 12 * r)
    for j in range(1, i):
        x = j * b % r
        s += Fraction(x * (r - x), 2 * r)
    return s


def correction_cP(t: SingularityType, i: int) -> Fraction:
    """Local correction ``c_P`` for a divisor locally ``i * K`` at ``1/r(1,-1,b)``."""
    return _correction(t.r, t.b, i % t.r)


def local_class_of_A(q: int, t: SingularityType) -> int:
    """The ``i`` in ``[0, r)`` with ``q i = -1 mod r``."""
    if gcd(q, t.r) != 1:
        raise InconsistentCandidate(f"index {q} is not coprime to the local index {t.r}")
    return (-pow(q, -1, t.r)) % t.r


def kawamata_Kc2(basket: Basket) -> Fraction:
    """``-K.c2 = 24 - sum (r - 1/r)``."""
    return 24 - basket.contribution_sum


@dataclass(frozen=True)
class NumericalFano:
    q: int
    A3: Fraction
    basket: Basket = Basket()

    def __post_init__(self):
        object.__setattr__(self, "A3", Fraction(self.A3))
        if self.q < 1:
            raise ValueError("Fano index must be positive")
        if self.A3 <= 0:
            raise InconsistentCandidate(f"A^3 = {self.A3} is not positive")
        for t, _ in self.basket:
            if gcd(self.q, t.r) != 1:
                raise InconsistentCandidate(f"gcd(q={self.q}, r={t.r}) != 1")
        if self.Kc2 <= 0:
            raise InconsistentCandidate(f"-K.c2 = {self.Kc2} is not positive")

    @cached_property
    def Kc2(self) -> Fraction:
        return kawamata_Kc2(self.basket)

    @cached_property
    def local_classes(self) -> tuple[tuple[SingularityType, int, int], ...]:
        return tuple((t, m, local_class_of_A(self.q, t)) for t, m in self.basket)

    @property
    def index(self) -> int:
        return self.basket.index


def basket_part(q: int, Kc2: Fraction, classes, t: int) -> Fraction:
    """Everything in chi(tA) except the A^3 term."""
    s = 1 + Fraction(t, 12 * q) * Kc2
    for pt, m, i in classes:
        s += m * _correction(pt.r, pt.b, (t * i) % pt.r)
    return s


def cubic_factor(q: int, t: int) -> Fraction:
    return Fraction(t * (t + q) * (2 * t + q), 12)


def chi_raw(q: int, A3: Fraction, Kc2: Fraction, classes, t: int) -> Fraction:
    return cubic_factor(q, t) * A3 + basket_part(q, Kc2, classes, t)


def chi(nf: NumericalFano, t: int) -> Fraction:
    return chi_raw(nf.q, nf.A3, nf.Kc2, nf.local_classes, t)


def _integer(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise InconsistentCandidate(f"{what} = {x} is not an integer")
    return x.numerator


def genus(nf: NumericalFano) -> int:
    """``dim|-K| - 1 = chi(qA) - 2``."""
    return _integer(chi(nf, nf.q), f"chi({nf.q}A)") - 2


@dataclass(frozen=True)
class HilbertCoefficients:
    """``h0(mA)`` for ``m = 0..N``."""

    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if not self.values or self.values[0] != 1:
            raise ValueError("h0 of the trivial divisor must be 1")
        if any(v < 0 for v in self.values):
            raise InconsistentCandidate(f"negative plurigenus in {self.values}")

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __getitem__(self, m):
        return self.values[m]

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        if isinstance(other, HilbertCoefficients):
            return self.values == other.values
        if isinstance(other, Sequence):
            return self.values == tuple(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.values)

    def __str__(self):
        return " ".join(map(str, self.values))


def hilbert_coeffs(nf: NumericalFano, N: int) -> HilbertCoefficients:
    if N < 0:
        raise ValueError("N must be nonnegative")
    return HilbertCoefficients(tuple(_integer(chi(nf, m), f"chi({m}A)") for m in range(N + 1)))


def delpezzo_linear_bound(t: int, d: int) -> Fraction:
    """Upper bound ``t(t+d)/2d`` for ``dim|B|`` with ``B ~ t*Theta`` on a degree-d log del Pezzo."""
    if not 1 <= d <= 6:
        raise ValueError("degree must satisfy 1 <= d <= 6")
    if t < 1:
        raise ValueError("t must be positive")
    return Fraction(t * (t + d), 2 * d)
