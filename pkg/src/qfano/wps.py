"""Weighted projective spaces and graded formats.

Hilbert series are kept as ``numerator / prod(1 - t^a)`` with an integer
numerator (a list of coefficients, lowest degree first).  ``monomial_count``
is the independent oracle: it counts monomials directly and never touches a
numerator or Riemann-Roch.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd, prod
from typing import Sequence

from .orbifold_rr import HilbertCoefficients
from .singularities import Basket, type_from_weights

Poly = tuple[int, ...]


def _trim(c: list[int]) -> Poly:
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_mul(f: Sequence[int], g: Sequence[int]) -> Poly:
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if x:
            for j, y in enumerate(g):
                out[i + j] += x * y
    return _trim(out)


def poly_from_terms(terms: dict[int, int]) -> Poly:
    c = [0] * (max(terms, default=0) + 1)
    for e, k in terms.items():
        c[e] += k
    return _trim(c)


def poly_str(p: Sequence[int], var: str = "t") -> str:
    parts = []
    for e, k in enumerate(p):
        if not k:
            continue
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        mag = abs(k)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
        sign = "-" if k < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    s = ("-" if first_sign == "-" else "") + first
    return s + "".join(f" {sg} {b}" for sg, b in parts[1:])


@dataclass(frozen=True)
class WeightSystem:
    weights: tuple[int, ...]

    def __post_init__(self):
        w = tuple(sorted(int(a) for a in self.weights))
        object.__setattr__(self, "weights", w)
        if not w or w[0] < 1:
            raise ValueError("weights must be positive")
        n = len(w)
        if n > 1:
            for sub in combinations(w, n - 1):
                if gcd(*sub) != 1:
                    raise ValueError(f"P{w} is not well formed")

    def __len__(self):
        return len(self.weights)

    def __str__(self):
        return "P(" + ",".join(map(str, self.weights)) + ")"


def monomial_count(w: WeightSystem | Sequence[int], m: int) -> int:
    """Number of monomials of weighted degree ``m`` (coin-change DP)."""
    weights = w.weights if isinstance(w, WeightSystem) else tuple(w)
    if m < 0:
        return 0
    ways = [1] + [0] * m
    for a in weights:
        for k in range(a, m + 1):
            ways[k] += ways[k - a]
    return ways[m]


def monomial_counts(w: WeightSystem | Sequence[int], N: int) -> list[int]:
    weights = w.weights if isinstance(w, WeightSystem) else tuple(w)
    ways = [1] + [0] * N
    for a in weights:
        for k in range(a, N + 1):
            ways[k] += ways[k - a]
    return ways


def wps_invariants(w: WeightSystem | Sequence[int]):
    """``(q, A^3, basket)`` of a weighted projective 3-space with isolated singular points."""
    if not isinstance(w, WeightSystem):
        w = WeightSystem(tuple(w))
    a = w.weights
    if len(a) != 4:
        raise ValueError("need four weights")
    for x, y in combinations(a, 2):
        if gcd(x, y) > 1:
            raise ValueError(f"{w} is singular along a curve (gcd({x},{y}) > 1)")
    points = []
    for k, r in enumerate(a):
        if r >= 2:
            points.append(type_from_weights(r, a[:k] + a[k + 1:]))
    return sum(a), Fraction(1, prod(a)), Basket.of(*points)


def _halves(x) -> Fraction:
    f = Fraction(x)
    if (2 * f).denominator != 1:
        raise ValueError(f"Pfaffian weight {x} is not a half-integer")
    return f


@dataclass(frozen=True)
class GradedFormat:
    """An ambient weight system plus the shape of the equations.

    ``kind`` is ``"wps"``, ``"hypersurface"``, ``"ci"`` or ``"pfaffian"``; ``data``
    holds the equation degrees (hypersurface, ci) or the five half-integer
    weights ``b_i`` of a 5x5 skew matrix whose ``(i, j)`` entry has degree
    ``b_i + b_j`` (pfaffian).
    """

    ambient: WeightSystem
    kind: str = "wps"
    data: tuple = field(default=())

    def __post_init__(self):
        if not isinstance(self.ambient, WeightSystem):
            object.__setattr__(self, "ambient", WeightSystem(tuple(self.ambient)))
        kind = {"hyp": "hypersurface", "complete_intersection": "ci", "pf": "pfaffian"}.get(self.kind, self.kind)
        object.__setattr__(self, "kind", kind)
        if kind == "wps":
            if self.data:
                raise ValueError("wps format takes no data")
        elif kind in ("hypersurface", "ci"):
            degs = tuple(int(d) for d in self.data)
            if not degs or any(d < 2 for d in degs):
                raise ValueError("equation degrees must be >= 2")
            if kind == "hypersurface" and len(degs) != 1:
                raise ValueError("a hypersurface has one equation")
            object.__setattr__(self, "data", degs)
        elif kind == "pfaffian":
            b = tuple(_halves(x) for x in self.data)
            if len(b) != 5:
                raise ValueError("a 5x5 Pfaffian format needs five weights")
            for i, j in combinations(range(5), 2):
                e = b[i] + b[j]
                if e.denominator != 1 or e <= 0:
                    raise ValueError(f"entry ({i+1},{j+1}) has degree {e}, not a positive integer")
            sigma = sum(b)
            for bi in b:
                if (sigma - bi).denominator != 1 or sigma - bi <= 0:
                    raise ValueError(f"Pfaffian degree {sigma - bi} is not a positive integer")
            object.__setattr__(self, "data", b)
        else:
            raise ValueError(f"unknown format kind {self.kind!r}")

    @property
    def codim(self) -> int:
        return {"wps": 0, "hypersurface": 1, "ci": len(self.data), "pfaffian": 3}[self.kind]

    @property
    def equation_degrees(self) -> tuple[int, ...]:
        if self.kind == "pfaffian":
            sigma = sum(self.data)
            return tuple(sorted(int(sigma - bi) for bi in self.data))
        return tuple(self.data)

    @property
    def k_adj(self) -> int:
        if self.kind == "pfaffian":
            return int(2 * sum(self.data))
        return sum(self.data)

    @property
    def entry_degrees(self) -> list[list[int]]:
        """Upper triangle of the skew matrix degrees, row by row (pfaffian only)."""
        if self.kind != "pfaffian":
            raise ValueError("only Pfaffian formats have a degree matrix")
        b = self.data
        return [[int(b[i] + b[j]) for j in range(i + 1, 5)] for i in range(4)]

    @property
    def dimension(self) -> int:
        return len(self.ambient) - self.codim - 1

    def __str__(self):
        ws = ",".join(map(str, self.ambient.weights))
        if self.kind == "wps":
            return f"wps:{ws}"
        if self.kind == "hypersurface":
            return f"hyp:{self.data[0]}@{ws}"
        if self.kind == "ci":
            return "ci:" + ",".join(map(str, self.data)) + f"@{ws}"
        return "pf:" + ",".join(map(str, self.data)) + f"@{ws}"


def pfaffian_weights_from_degrees(rows: Sequence[Sequence[int]]) -> tuple[Fraction, ...]:
    """Recover ``b_1..b_5`` from the upper-triangular entry degrees of a 5x5 skew matrix.

    ``rows`` has lengths 4, 3, 2, 1.  Raises if the degrees are not of the form
    ``b_i + b_j``.
    """
    if [len(r) for r in rows] != [4, 3, 2, 1]:
        raise ValueError("expected rows of lengths 4,3,2,1")
    m = {}
    for i, row in enumerate(rows):
        for k, d in enumerate(row):
            m[i, i + 1 + k] = m[i + 1 + k, i] = Fraction(d)
    b = [(m[i, j] + m[i, k] - m[j, k]) / 2
         for i, j, k in [(0, 1, 2), (1, 0, 2), (2, 0, 1), (3, 0, 1), (4, 0, 1)]]
    for i, j in combinations(range(5), 2):
        if b[i] + b[j] != m[i, j]:
            raise ValueError("entry degrees are not of the form b_i + b_j")
    return tuple(b)


@dataclass(frozen=True)
class HilbertSeries:
    numerator: Poly
    denominator_weights: tuple[int, ...]

    def __str__(self):
        return f"({poly_str(self.numerator)}) / prod(1 - t^a), a in {list(self.denominator_weights)}"


def format_series(f: GradedFormat) -> HilbertSeries:
    if f.kind == "wps":
        num: Poly = (1,)
    elif f.kind in ("hypersurface", "ci"):
        num = (1,)
        for d in f.data:
            num = poly_mul(num, poly_from_terms({0: 1, d: -1}))
    else:
        k = f.k_adj
        terms: dict[int, int] = {0: 1, k: -1}
        for d in f.equation_degrees:
            terms[d] = terms.get(d, 0) - 1
            terms[k - d] = terms.get(k - d, 0) + 1
        num = poly_from_terms(terms)
    return HilbertSeries(num, f.ambient.weights)


def series_coeffs(s: HilbertSeries, N: int) -> HilbertCoefficients:
    if N < 0:
        raise ValueError("N must be nonnegative")
    c = [0] * (N + 1)
    for e, k in enumerate(s.numerator[: N + 1]):
        c[e] = k
    for a in s.denominator_weights:
        for m in range(a, N + 1):
            c[m] += c[m - a]
    return HilbertCoefficients(tuple(c))


def _divide_by_one_minus_t(p: Sequence[int]) -> tuple[Poly, int]:
    """Return ``(quotient, remainder)`` of ``p / (1 - t)``."""
    # p = (1 - t) g  <=>  g_k = sum_{j<=k} p_j
    g, acc = [], 0
    for x in p[:-1]:
        acc += x
        g.append(acc)
    remainder = acc + p[-1]
    return _trim(g or [0]), remainder


def format_fano_invariants(f: GradedFormat) -> tuple[int, Fraction]:
    """``(q, A^3)``; ``A^3`` is the leading coefficient of the series at ``t = 1``."""
    if f.dimension != 3:
        raise ValueError(f"{f} has dimension {f.dimension}, not 3")
    num = format_series(f).numerator
    for _ in range(f.codim):
        num, rem = _divide_by_one_minus_t(num)
        if rem:
            raise ValueError(f"numerator of {f} does not vanish to order {f.codim} at t = 1")
    q = sum(f.ambient.weights) - f.k_adj
    return q, Fraction(sum(num), prod(f.ambient.weights))


def gorenstein_symmetry_check(s: HilbertSeries | Sequence[int], k_adj: int, codim: int) -> bool:
    """``n(t) == (-1)^codim t^k n(1/t)``."""
    num = s.numerator if isinstance(s, HilbertSeries) else _trim(list(s))
    if len(num) - 1 > k_adj:
        return False
    padded = list(num) + [0] * (k_adj + 1 - len(num))
    sign = -1 if codim % 2 else 1
    return all(padded[e] == sign * padded[k_adj - e] for e in range(k_adj + 1))


_FMT = re.compile(r"^\s*(wps|hyp|ci|pf|pfm)\s*:\s*([^@]*?)\s*(?:@\s*(.*))?$")


def parse_format(text: str) -> GradedFormat:
    """Parse ``wps:1,2,3,5``, ``hyp:6@1,2,3,4,5``, ``ci:2,2@1,1,1,1,1,1``,
    ``pf:1/2,1/2,1/2,3/2,3/2@1,1,1,1,2,2,3`` or the degree-matrix form
    ``pfm:1,1,2,2/1,2,2/2,2/3@1,1,1,1,2,2,3``."""
    mo = _FMT.match(text)
    if not mo:
        raise ValueError(f"cannot parse format {text!r}")
    kind, head, tail = mo.groups()
    if kind == "wps":
        if tail:
            raise ValueError("wps takes no '@'")
        return GradedFormat(WeightSystem(tuple(int(x) for x in head.split(","))))
    if not tail:
        raise ValueError(f"{kind} format needs '@weights'")
    ambient = WeightSystem(tuple(int(x) for x in tail.split(",")))
    if kind == "pfm":
        rows = [[int(x) for x in row.split(",")] for row in head.split("/")]
        return GradedFormat(ambient, "pfaffian", pfaffian_weights_from_degrees(rows))
    if kind == "pf":
        return GradedFormat(ambient, "pfaffian", tuple(Fraction(x) for x in head.split(",")))
    degs = tuple(int(x) for x in head.split(","))
    return GradedFormat(ambient, "hypersurface" if kind == "hyp" else "ci", degs)
