"""Terminal cyclic quotient singularities and baskets.

A type is stored as ``(r, b)`` meaning the quotient ``1/r(1, -1, b)``; this is
the ``b`` that enters the Riemann-Roch correction terms.  The same point is
written ``1/r(1, a, r-a)`` in the other common notation, with ``a = b^-1 mod r``.
Only ``b -> r - b`` is an isomorphism of the germ, so the canonical
representative is ``min(b, r - b)``.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Iterator, Optional


class NonTerminalError(ValueError):
    """Raised for ``1/r(1,-1,b)`` with ``gcd(b, r) > 1``."""


def type_orbit(r: int, b: int) -> tuple[int, int]:
    """Members of the isomorphism class of ``1/r(1,-1,b)``."""
    return (b % r, (-b) % r)


@dataclass(frozen=True, order=True)
class SingularityType:
    r: int
    b: int

    def __post_init__(self):
        if self.r < 2 or not 1 <= self.b <= self.r - 1:
            raise ValueError(f"need r >= 2 and 1 <= b <= r-1, got ({self.r}, {self.b})")
        if gcd(self.r, self.b) != 1:
            raise NonTerminalError(f"1/{self.r}(1,-1,{self.b}) is not terminal")
        if self.b != min(type_orbit(self.r, self.b)):
            raise ValueError(f"({self.r}, {self.b}) is not canonical; use make_type")

    @property
    def contribution(self) -> Fraction:
        return Fraction(self.r * self.r - 1, self.r)

    @property
    def a(self) -> int:
        """The ``a`` of ``1/r(1, a, r-a)``, normalised to ``a <= r/2``."""
        inv = pow(self.b, -1, self.r)
        return min(inv, self.r - inv)

    def weights(self) -> tuple[int, int, int]:
        return (1, self.r - self.a, self.a)

    def __str__(self):
        return "1/%d(%d,%d,%d)" % ((self.r,) + self.weights())


def make_type(r: int, b: int) -> SingularityType:
    if r < 2 or not 1 <= b <= r - 1:
        raise ValueError(f"need r >= 2 and 1 <= b <= r-1, got ({r}, {b})")
    if gcd(r, b) != 1:
        raise NonTerminalError(f"1/{r}(1,-1,{b}) is not terminal")
    return SingularityType(r, min(type_orbit(r, b)))


def contribution(t: SingularityType) -> Fraction:
    return t.contribution


def type_from_weights(r: int, weights: Iterable[int]) -> SingularityType:
    """Identify ``1/r(w1, w2, w3)`` as a terminal type.

    Terminal means two weights cancel mod r and the third is a unit; scaling
    the generator so the cancelling pair becomes ``(1, -1)`` exposes ``b``.
    """
    w = [x % r for x in weights]
    if len(w) != 3:
        raise ValueError("a threefold quotient needs three weights")
    for i in range(3):
        for j in range(i + 1, 3):
            if (w[i] + w[j]) % r == 0 and gcd(w[i], r) == 1:
                third = w[3 - i - j]
                if gcd(third, r) != 1:
                    break
                return make_type(r, third * pow(w[i], -1, r) % r)
    raise NonTerminalError(f"1/{r}{tuple(weights)} is not a terminal cyclic quotient")


def _expanded_key(entries) -> tuple:
    return tuple((t.r, t.b) for t, m in entries for _ in range(m))


@dataclass(frozen=True)
class Basket:
    """Multiset of singularity types, stored sorted by ``(r, b)``."""

    entries: tuple[tuple[SingularityType, int], ...] = ()

    def __post_init__(self):
        merged = Counter()
        for t, m in self.entries:
            if m < 1:
                raise ValueError("multiplicities must be positive")
            merged[t] += m
        object.__setattr__(self, "entries", tuple(sorted(merged.items())))

    @classmethod
    def of(cls, *types: SingularityType | tuple[int, int]) -> "Basket":
        ts = [t if isinstance(t, SingularityType) else make_type(*t) for t in types]
        return cls(tuple(Counter(ts).items()))

    def __iter__(self) -> Iterator[tuple[SingularityType, int]]:
        return iter(self.entries)

    def __len__(self):
        return sum(m for _, m in self.entries)

    def points(self) -> Iterator[SingularityType]:
        for t, m in self.entries:
            for _ in range(m):
                yield t

    @cached_property
    def contribution_sum(self) -> Fraction:
        return sum((m * t.contribution for t, m in self.entries), Fraction(0))

    @cached_property
    def index(self) -> int:
        """Gorenstein index: lcm of the local indices (1 for the empty basket)."""
        return lcm(1, *(t.r for t, _ in self.entries))

    @property
    def key(self) -> tuple:
        """Sort key of the canonical order (lexicographic on the sorted point list)."""
        return _expanded_key(self.entries)

    def __lt__(self, other: "Basket"):
        return self.key < other.key

    def serialize(self) -> str:
        return ";".join(f"{m}*{t}" for t, m in self.entries)

    def compact(self) -> str:
        return ";".join(f"{t.r},{t.b},{m}" for t, m in self.entries)

    def as_triples(self) -> list[list[int]]:
        return [[t.r, t.b, m] for t, m in self.entries]

    def __str__(self):
        return self.serialize() or "{}"


_LONG = re.compile(r"^\s*(?:(\d+)\s*\*\s*)?1/(\d+)\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*$")
_COMPACT = re.compile(r"^\s*(\d+)\s*,\s*(\d+)\s*(?:,\s*(\d+)\s*)?$")


def parse_basket(text: str) -> Basket:
    """Parse ``"1*1/3(1,2,1);2*1/2(1,1,1)"`` or the compact ``"3,1,1;2,1,2"``.

    In the compact form each term is ``r,b,m`` with ``b`` as in ``1/r(1,-1,b)``.
    """
    text = text.strip()
    if text in ("", "{}", "0"):
        return Basket()
    entries = []
    for term in text.split(";"):
        if not term.strip():
            continue
        if mo := _LONG.match(term):
            m, r, *w = mo.groups()
            entries.append((type_from_weights(int(r), map(int, w)), int(m or 1)))
        elif mo := _COMPACT.match(term):
            r, b, m = mo.groups()
            entries.append((make_type(int(r), int(b) % int(r)), int(m or 1)))
        else:
            raise ValueError(f"cannot parse basket term {term!r}")
    return Basket(tuple(entries))


def terminal_types(r_max: int, coprime_to: Optional[int] = None) -> list[SingularityType]:
    out = []
    for r in range(2, r_max + 1):
        if coprime_to is not None and gcd(r, coprime_to) != 1:
            continue
        out.extend(SingularityType(r, b) for b in range(1, r // 2 + 1) if gcd(r, b) == 1)
    return out


def _r_max(max_sum: Fraction) -> int:
    # largest r with r - 1/r < max_sum
    r = 1
    while Fraction(((r + 1) ** 2) - 1, r + 1) < max_sum:
        r += 1
    return r


def enumerate_baskets(max_sum, index_coprime_to: Optional[int] = None,
                      partition: Optional[tuple[int, int]] = None) -> Iterator[Basket]:
    """Yield every basket with contribution sum strictly below ``max_sum``.

    Order is lexicographic on the sorted list of points, which is the DFS
    pre-order below.  ``partition=(i, k)`` keeps only subtrees whose first
    point has type index ``= i mod k``; the empty basket lives in partition 0.
    Merging all ``k`` partitions and sorting by ``Basket.key`` reproduces the
    unpartitioned stream.
    """
    max_sum = Fraction(max_sum)
    if max_sum > 24:
        raise ValueError("max_sum must be <= 24")
    types = terminal_types(_r_max(max_sum), index_coprime_to)
    costs = [t.contribution for t in types]
    stack: list[SingularityType] = []

    def walk(start: int, total: Fraction) -> Iterator[Basket]:
        yield Basket(tuple(Counter(stack).items()))
        for j in range(start, len(types)):
            s = total + costs[j]
            if s >= max_sum:
                # costs are nondecreasing in j
                break
            stack.append(types[j])
            yield from walk(j, s)
            stack.pop()

    i, k = partition if partition else (0, 1)
    if i == 0:
        yield Basket()
    for j in range(i, len(types), k):
        if costs[j] >= max_sum:
            break
        stack.append(types[j])
        yield from walk(j, costs[j])
        stack.pop()
