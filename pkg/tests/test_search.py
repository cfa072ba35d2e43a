from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from qfano.orbifold_rr import NumericalFano, chi
from qfano.search import (BM, CHI_A_NONPOSITIVE, DIM_A_ABOVE_4, PASSED, CandidateRecord,
                          SearchConfig, A3_by_vanishing, bm_check, filter_report,
                          integrality_check, search, search_q, search_q2, suzuki_A3)
from qfano.singularities import Basket, enumerate_baskets, make_type, parse_basket
from qfano.wps import wps_invariants

P3457 = wps_invariants((3, 4, 5, 7))
P2357 = wps_invariants((2, 3, 5, 7))


@pytest.fixture(scope="module")
def q2_records():
    return search_q2(SearchConfig(2))


@pytest.mark.parametrize("q, basket, A3", [
    (4, Basket(), Fraction(1)),
    (19, P3457[2], Fraction(1, 420)),
    (9, parse_basket("2,1,1;4,1,1;5,2,1"), Fraction(1, 20)),
    (3, Basket(), Fraction(2)),
])
def test_A3_routes(q, basket, A3):
    assert A3_by_vanishing(q, basket) == A3
    assert suzuki_A3(q, basket) == A3


def test_A3_needs_q_at_least_3():
    with pytest.raises(ValueError):
        suzuki_A3(2, Basket())


def test_A3_routes_agree_exhaustively():
    for q in range(3, 20):
        for basket in enumerate_baskets(24, q):
            if basket.index <= 60:
                assert suzuki_A3(q, basket) == A3_by_vanishing(q, basket), (q, basket)


@pytest.mark.parametrize("args, ok", [
    ((2, Fraction(10, 3), Fraction(64, 3)), True),
    ((19, Fraction(1, 420), Fraction(2489, 420)), True),
    ((19, 1, Fraction(2489, 420)), False),
])
def test_bm_check(args, ok):
    assert bm_check(*args) is ok


def test_integrality_check():
    assert integrality_check(NumericalFano(2, Fraction(10, 3), parse_basket("3,1,1")))
    # 1/3 is on the grid and chi stays integral over the whole scan
    assert integrality_check(NumericalFano(2, Fraction(1, 3), parse_basket("3,1,1")))
    assert chi(NumericalFano(2, Fraction(1, 3), parse_basket("3,1,1")), 1) == 2
    assert not integrality_check(NumericalFano(2, Fraction(10, 3)))


def test_search_q19_q17():
    (rec,) = search_q(SearchConfig(19))
    assert (rec.basket, rec.A3) == (P3457[2], P3457[1])
    (rec,) = search_q(SearchConfig(17))
    assert (rec.basket, rec.A3) == (P2357[2], P2357[1])


@pytest.mark.parametrize("q", [12, 14, 15, 16, 18, 20])
def test_excluded_indices_are_empty(q):
    assert search_q(SearchConfig(q)) == []


def test_q1_rejected():
    with pytest.raises(ValueError):
        SearchConfig(1)


@pytest.mark.parametrize("q", [3, 5, 9, 11, 13])
def test_emitted_records_pass_every_filter(q):
    records = search(SearchConfig(q))
    assert records
    for rec in records:
        assert all(filter_report(rec).values())
        nf = rec.numerical
        assert all(chi(nf, t) == 0 for t in range(-q + 1, 0))
        for t in range(-30, 30):
            assert chi(nf, t) + chi(nf, -t - q) == 0


@pytest.mark.parametrize("q, weights", [(13, (1, 3, 4, 5)), (11, (1, 2, 3, 5)), (7, (1, 1, 2, 3)),
                                        (5, (1, 1, 1, 2)), (4, (1, 1, 1, 1))])
def test_wps_found_by_search(q, weights):
    _, A3, basket = wps_invariants(weights)
    assert any(r.basket == basket and r.A3 == A3 for r in search(SearchConfig(q)))


def test_partitioned_search_is_identical():
    a = search(SearchConfig(5))
    b = search(SearchConfig(5, partitions=3))
    assert [r.to_json() for r in a] == [r.to_json() for r in b]


def test_genus_min():
    recs = search(SearchConfig(9, genus_min=5))
    assert [(r.basket, r.A3) for r in recs] == [(parse_basket("2,1,1;4,1,1;5,2,1"), Fraction(1, 20))]


def test_q2_contains_example_families(q2_records):
    by_key = {(r.basket.compact(), r.A3): r for r in q2_records}
    X = by_key["3,1,1", Fraction(10, 3)]
    Y = by_key["3,1,1", Fraction(7, 3)]
    assert X.genus == 14 and X.h0[:3] == (1, 5, 16)
    assert Y.h0[:4] == (1, 4, 12, 27)


def test_q2_records_are_consistent(q2_records):
    assert q2_records == sorted(q2_records, key=lambda r: r.sort_key)
    for rec in q2_records:
        assert PASSED <= rec.flags
        assert all(t.r % 2 for t, _ in rec.basket)
        nf = rec.numerical
        assert chi(nf, -1) == 0
        assert bm_check(2, rec.A3, rec.Kc2)
        assert (CHI_A_NONPOSITIVE in rec.flags) == (rec.h0[1] <= 0)


def test_q2_dimA_bound_is_not_numerical(q2_records):
    # dim|A| <= 4 for non-Gorenstein X is a geometric theorem; Steps 1-5 alone
    # leave records with chi(A) >= 6, and each carries the annotation.
    high = [r for r in q2_records if r.basket.entries and r.h0[1] - 1 >= 5]
    assert high
    assert all(DIM_A_ABOVE_4 in r.flags for r in high)
    assert all(DIM_A_ABOVE_4 not in r.flags for r in q2_records if r not in high)


def test_record_json_round_trip(q2_records):
    for rec in q2_records[:200]:
        line = rec.to_json()
        back = CandidateRecord.from_json(line)
        assert back == rec and back.to_json() == line


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 4, 5, 7, 8, 11, 13]),
       st.lists(st.sampled_from([(r, b) for r in range(2, 14) for b in range(1, r // 2 + 1)
                                 if gcd(r, b) == 1]), max_size=4))
def test_A3_routes_agree_random(q, types):
    pts = [make_type(*t) for t in types if gcd(q, t[0]) == 1]
    basket = Basket.of(*pts)
    if basket.contribution_sum >= 24:
        return
    assert suzuki_A3(q, basket) == A3_by_vanishing(q, basket)
