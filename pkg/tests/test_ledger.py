from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qfano.ledger import (QUADRIC_CHAIN, QUADRIC_TRACE, LedgerError, LedgerStep, LinkLedger,
                          apply_step, delta_genus, delta_genus_delPezzo, format_chain,
                          kawamata_increment, parse_chain, parse_step, verify_paper_chain)
from qfano.singularities import make_type


def test_curve_blowup():
    assert apply_step(46, parse_step("blowcurve(g=0,kdeg=9)")) == 26
    assert LedgerStep("blowup_curve", 0, 9).normal_degree == 7


def test_contractions():
    assert apply_step(26, parse_step("contract:1/2(1,1,1)")) == Fraction(53, 2)
    assert apply_step(Fraction(53, 2), parse_step("contract:1/3(1,1,2)")) == Fraction(80, 3)
    assert apply_step(26, parse_step("flop")) == 26
    assert apply_step(54, parse_step("blowpt")) == 46


def test_kawamata_increment():
    assert kawamata_increment(make_type(2, 1)) == Fraction(1, 2)
    assert kawamata_increment(make_type(3, 1)) == Fraction(1, 6)
    # 1/5(1,2,3): r a (r-a) = 30
    assert kawamata_increment(make_type(5, 2)) == Fraction(1, 30)


def test_quadric_chain():
    report = verify_paper_chain()
    assert report.ok
    assert tuple(report.trace) == QUADRIC_TRACE
    assert report.trace[-1] == 8 * Fraction(10, 3)


def test_reversed_chain():
    ledger = LinkLedger(54, parse_chain(QUADRIC_CHAIN))
    assert ledger.reversed().degrees == list(reversed(QUADRIC_TRACE))


def test_perturbed_chain_fails():
    report = verify_paper_chain(QUADRIC_CHAIN.replace("g=0", "g=1"))
    assert not report.ok
    assert report.trace[-1] != Fraction(80, 3)


def test_nonpositive_degree():
    with pytest.raises(LedgerError):
        apply_step(8, parse_step("blowpt"))
    with pytest.raises(LedgerError):
        apply_step(0, parse_step("flop"))


def test_step_validation():
    with pytest.raises(LedgerError):
        LedgerStep("blowup_curve", 0, Fraction(1, 2))
    with pytest.raises(LedgerError):
        LedgerStep("kawamata_blowup")
    with pytest.raises(ValueError):
        parse_step("explode")


def test_chain_text_round_trip():
    steps = parse_chain(QUADRIC_CHAIN)
    assert parse_chain(format_chain(steps)) == steps


kinds = st.sampled_from(["blowpt", "contractpt", "flop", "blowcurve(g=0,kdeg=9)",
                         "contractcurve(g=2,kdeg=5)", "blowup:1/5(1,2,3)", "contract:1/7(1,2,5)"])


@given(kinds, st.fractions(min_value=Fraction(1, 100), max_value=200))
def test_inverse_round_trip(text, d):
    s = parse_step(text)
    try:
        once = apply_step(d, s)
    except LedgerError:
        return
    assert apply_step(once, s.inverse()) == d


@pytest.mark.parametrize("args, value", [((3, 1, 4), 0), ((3, 5, 7), 1), ((3, 0, 3), 0)])
def test_delta_genus(args, value):
    assert delta_genus(*args) == value


@pytest.mark.parametrize("lam, d, value", [(2, 1, 1), (2, 5, 1), (3, 8, 0), (4, 9, 0),
                                           (Fraction(5, 2), 9, 0)])
def test_delta_genus_del_pezzo(lam, d, value):
    assert delta_genus_delPezzo(lam, d) == value


def test_delta_genus_del_pezzo_matches_definition():
    # h0(S) = lam/2 S^3 + 2 and (lam-1)^2 S^3 = K_S^2
    for lam in map(Fraction, (2, Fraction(5, 2), 3, 4)):
        for d in range(1, 10):
            S3 = Fraction(d) / (lam - 1) ** 2
            h0 = lam / 2 * S3 + 2
            if h0.denominator == 1:
                assert delta_genus(3, S3, int(h0)) == delta_genus_delPezzo(lam, d)
