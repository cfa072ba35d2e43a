"""Candidate search for numerical Q-Fano threefolds of a given index.

For ``q >= 3`` each basket determines ``A^3`` through the vanishing of
``chi(-A)``; the remaining filters are integrality, Bogomolov-Miyaoka and
vanishing for all ``-q < t < 0``.  For ``q = 2`` the ``t = -1`` vanishing does
not involve ``A^3`` at all, so the basket is filtered first and ``A^3`` is then
scanned on the grid ``k / r`` (``r`` the Gorenstein index) up to the
Bogomolov-Miyaoka bound.
"""
from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional

from .orbifold_rr import (HilbertCoefficients, NumericalFano, basket_part, chi, chi_raw,
                          correction_cP, cubic_factor, kawamata_Kc2, local_class_of_A)
from .singularities import Basket, enumerate_baskets, make_type

log = logging.getLogger(__name__)

FANO_INDICES = (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 13, 17, 19)

# filter names recorded on every emitted candidate
KAWAMATA = "kawamata"
COPRIME = "coprime"
INTEGRAL = "integral"
BM = "bogomolov_miyaoka"
VANISHING = "vanishing"
PASSED = frozenset({KAWAMATA, COPRIME, INTEGRAL, BM, VANISHING})
# annotations
CHI_A_NONPOSITIVE = "chi_A_nonpositive"
DIM_A_ABOVE_4 = "dim_A_above_4"


class SearchInconsistency(RuntimeError):
    """Two independent routes to the same number disagree."""


@dataclass(frozen=True)
class SearchConfig:
    q: int
    max_terms: int = 2
    emit_series_to: int = 10
    genus_min: Optional[int] = None
    partitions: int = 1

    def __post_init__(self):
        if self.q < 2:
            raise ValueError("the search needs q >= 2")
        if self.max_terms < 1 or self.emit_series_to < 0 or self.partitions < 1:
            raise ValueError("max_terms, partitions >= 1 and emit_series_to >= 0 required")


@dataclass(frozen=True)
class CandidateRecord:
    q: int
    basket: Basket
    A3: Fraction
    Kc2: Fraction
    genus: int
    h0: HilbertCoefficients
    flags: frozenset = field(default=PASSED)

    @property
    def sort_key(self):
        return (self.basket.key, self.A3)

    @property
    def numerical(self) -> NumericalFano:
        return NumericalFano(self.q, self.A3, self.basket)

    def to_json(self) -> str:
        return json.dumps({
            "q": self.q,
            "basket": self.basket.as_triples(),
            "A3": str(self.A3),
            "KC2": str(self.Kc2),
            "genus": self.genus,
            "h0": [str(v) for v in self.h0],
            "flags": sorted(self.flags),
        }, separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "CandidateRecord":
        d = json.loads(line)
        basket = Basket(tuple((make_type(r, b), m) for r, b, m in d["basket"]))
        return cls(q=int(d["q"]), basket=basket, A3=Fraction(d["A3"]), Kc2=Fraction(d["KC2"]),
                   genus=int(d["genus"]), h0=HilbertCoefficients(tuple(int(v) for v in d["h0"])),
                   flags=frozenset(d["flags"]))


def _classes(q: int, basket: Basket):
    return tuple((t, m, local_class_of_A(q, t)) for t, m in basket)


def suzuki_A3(q: int, basket: Basket) -> Fraction:
    """``A^3 = 12/((q-1)(q-2)) (1 - A.c2/12 + sum c_P(-A))``; may be nonpositive."""
    if q < 3:
        raise ValueError("the closed formula needs q >= 3")
    s = 1 - kawamata_Kc2(basket) / q / 12
    for t, m in basket:
        s += m * correction_cP(t, -local_class_of_A(q, t))
    return Fraction(12, (q - 1) * (q - 2)) * s


def A3_by_vanishing(q: int, basket: Basket) -> Fraction:
    """Solve ``chi(-A) = 0`` for ``A^3``, treating chi as affine in ``A^3``."""
    if q < 3:
        raise ValueError("chi(-A) does not depend on A^3 when q < 3")
    Kc2 = kawamata_Kc2(basket)
    classes = _classes(q, basket)
    # chi(-A) is affine in A^3: sample it at 0 and 1
    c0 = chi_raw(q, Fraction(0), Kc2, classes, -1)
    slope = chi_raw(q, Fraction(1), Kc2, classes, -1) - c0
    return -c0 / slope


def bm_check(q: int, A3, Kc2) -> bool:
    return (4 * q * q - 3 * q) * Fraction(A3) <= 4 * Fraction(Kc2)


def integrality_check(nf: NumericalFano, trange: Optional[Iterable[int]] = None) -> bool:
    """``r A^3`` integral and ``chi(tA)`` integral on ``trange``
    (default ``(-q, q + 2r]``)."""
    r = nf.index
    if (r * nf.A3).denominator != 1:
        return False
    if trange is None:
        trange = range(-nf.q + 1, nf.q + 2 * r + 1)
    return all(chi(nf, t).denominator == 1 for t in trange)


def vanishing_check(nf: NumericalFano) -> bool:
    return all(chi(nf, t) == 0 for t in range(-nf.q + 1, 0))


def _record(nf: NumericalFano, config: SearchConfig, extra=()) -> Optional[CandidateRecord]:
    values = []
    for m in range(config.emit_series_to + 1):
        v = chi(nf, m)
        if v.denominator != 1:
            raise SearchInconsistency(f"chi({m}A) = {v} for {nf} after passing integrality")
        values.append(v.numerator)
    g = chi(nf, nf.q)
    if g.denominator != 1:
        raise SearchInconsistency(f"chi(-K) = {g} for {nf}")
    g = g.numerator - 2
    if config.genus_min is not None and g < config.genus_min:
        return None
    flags = set(PASSED) | set(extra)
    if len(values) > 1 and values[1] <= 0:
        flags.add(CHI_A_NONPOSITIVE)
    return CandidateRecord(nf.q, nf.basket, nf.A3, nf.Kc2, g, HilbertCoefficients(tuple(values)),
                           frozenset(flags))


def _search_q_baskets(config: SearchConfig, baskets: Iterable[Basket]) -> list[CandidateRecord]:
    q = config.q
    out = []
    for basket in baskets:
        A3 = suzuki_A3(q, basket)
        if A3 != A3_by_vanishing(q, basket):
            raise SearchInconsistency(f"A^3 formulas disagree on {basket} at q = {q}")
        if A3 <= 0:
            continue
        nf = NumericalFano(q, A3, basket)
        r = basket.index
        if (r * A3).denominator != 1:
            continue
        if not bm_check(q, A3, nf.Kc2):
            continue
        if not vanishing_check(nf):
            continue
        if not integrality_check(nf, range(-q + 1, q + config.max_terms * r + 1)):
            continue
        rec = _record(nf, config)
        if rec is not None:
            out.append(rec)
    return out


def _grid_residues(q: int, basket: Basket, trange: range) -> list[int]:
    """Residues ``k mod r`` for which ``A^3 = k/r`` keeps chi integral on ``trange``.

    For q = 2 the cubic factor t(t+1)(t+2)/6 is an integer, so integrality of
    ``chi(t)`` only depends on ``k mod r``.
    """
    r = basket.index
    Kc2 = kawamata_Kc2(basket)
    classes = _classes(q, basket)
    alive = list(range(r))
    for t in trange:
        base = basket_part(q, Kc2, classes, t)
        cubic = cubic_factor(q, t)
        alive = [k for k in alive if (cubic * Fraction(k, r) + base).denominator == 1]
        if not alive:
            break
    return alive


def _search_q2_baskets(config: SearchConfig, baskets: Iterable[Basket]) -> list[CandidateRecord]:
    q = 2
    out = []
    for basket in baskets:
        Kc2 = kawamata_Kc2(basket)
        classes = _classes(q, basket)
        if basket_part(q, Kc2, classes, -1) != 0:
            continue
        r = basket.index
        trange = range(-q + 1, q + config.max_terms * r + 1)
        residues = set(_grid_residues(q, basket, trange))
        kmax = (4 * Kc2 * r) // (4 * q * q - 3 * q)
        for k in range(1, int(kmax) + 1):
            if k % r not in residues:
                continue
            nf = NumericalFano(q, Fraction(k, r), basket)
            extra = ()
            if basket.entries and chi(nf, 1) - 1 >= 5:
                extra = (DIM_A_ABOVE_4,)
            rec = _record(nf, config, extra)
            if rec is not None:
                out.append(rec)
    return out


def _run_partition(args) -> list[CandidateRecord]:
    config, part = args
    baskets = enumerate_baskets(24, config.q, partition=part)
    if config.q == 2:
        return _search_q2_baskets(config, baskets)
    return _search_q_baskets(config, baskets)


def _workers(k: int) -> int:
    cap = os.environ.get("QFANO_THREADS")
    n = min(k, os.cpu_count() or 1)
    if cap:
        n = min(n, max(1, int(cap)))
    return n


def _run(config: SearchConfig) -> list[CandidateRecord]:
    k = config.partitions
    jobs = [(config, (i, k)) for i in range(k)]
    workers = _workers(k)
    if workers <= 1:
        parts = [_run_partition(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_partition, jobs))
    records = [rec for part in parts for rec in part]
    records.sort(key=lambda rec: rec.sort_key)
    return records


def search_q(config: SearchConfig) -> list[CandidateRecord]:
    if config.q < 3:
        raise ValueError("search_q handles q >= 3; use search_q2 for q = 2")
    return _run(config)


def search_q2(config: SearchConfig) -> list[CandidateRecord]:
    if config.q != 2:
        raise ValueError("search_q2 is for q = 2")
    records = _run(config)
    log.info("q = 2: %d candidate series (published upper bound 1492)", len(records))
    return records


def search(config: SearchConfig) -> list[CandidateRecord]:
    return search_q2(config) if config.q == 2 else search_q(config)


def filter_report(rec: CandidateRecord, max_terms: int = 2) -> dict[str, bool]:
    """Re-run each filter on its own for an emitted record."""
    nf = rec.numerical
    r = rec.basket.index
    return {
        KAWAMATA: rec.basket.contribution_sum < 24 and nf.Kc2 > 0,
        COPRIME: all(gcd(rec.q, t.r) == 1 for t, _ in rec.basket),
        INTEGRAL: integrality_check(nf, range(-rec.q + 1, rec.q + max_terms * r + 1)),
        BM: bm_check(rec.q, rec.A3, nf.Kc2),
        VANISHING: vanishing_check(nf),
    }
