from fractions import Fraction
from itertools import product
from math import gcd

import pytest
from hypothesis import given, strategies as st

from qfano.catalogue import REFERENCE_WPS
from qfano.orbifold_rr import (HilbertCoefficients, InconsistentCandidate, NumericalFano, chi,
                               correction_cP, delpezzo_linear_bound, genus, hilbert_coeffs,
                               kawamata_Kc2, local_class_of_A)
from qfano.singularities import Basket, make_type, parse_basket
from qfano.wps import wps_invariants

X_FAMILY = NumericalFano(2, Fraction(10, 3), parse_basket("3,1,1"))
Y_FAMILY = NumericalFano(2, Fraction(7, 3), parse_basket("3,1,1"))
P3 = NumericalFano(4, 1)


def count_by_loops(weights, m):
    """Monomials of degree m by nested loops; kept separate from the DP in wps."""
    ranges = [range(m // a + 1) for a in weights]
    return sum(1 for e in product(*ranges) if sum(x * a for x, a in zip(e, weights)) == m)


# The oracle runs first: it is what fixes the correction-term convention.
@pytest.mark.parametrize("weights", REFERENCE_WPS)
def test_rr_matches_monomial_oracle(weights):
    q, A3, basket = wps_invariants(weights)
    nf = NumericalFano(q, A3, basket)
    for m in range(0, 25):
        assert chi(nf, m) == count_by_loops(weights, m), (weights, m)


@pytest.mark.parametrize("t, i, value", [
    ((3, 1), 0, Fraction(0)),
    ((3, 1), 1, Fraction(-2, 9)),
    ((3, 1), 2, Fraction(-1, 9)),
    ((5, 2), 4, Fraction(-1, 5)),
])
def test_correction_values(t, i, value):
    assert correction_cP(make_type(*t), i) == value


def test_correction_periodic():
    for r in range(2, 16):
        for b in range(1, r // 2 + 1):
            if gcd(r, b) == 1:
                t = make_type(r, b)
                for i in range(-2 * r, 3 * r):
                    assert correction_cP(t, i) == correction_cP(t, i % r)


def test_correction_invariant_under_sign_of_b():
    from qfano.orbifold_rr import _correction
    for r in range(2, 31):
        for b in range(1, r):
            if gcd(r, b) == 1:
                for i in range(r):
                    assert _correction(r, b, i) == _correction(r, r - b, i)


@pytest.mark.parametrize("q, t, i", [(2, (3, 1), 1), (19, (7, 2), 4), (5, (2, 1), 1)])
def test_local_class(q, t, i):
    assert local_class_of_A(q, make_type(*t)) == i


def test_local_class_rejects_common_factor():
    with pytest.raises(InconsistentCandidate):
        local_class_of_A(2, make_type(2, 1))


@pytest.mark.parametrize("basket, value", [
    ("", Fraction(24)),
    ("3,1,1", Fraction(64, 3)),
    ("2,1,1;4,1,1;5,2,1", Fraction(279, 20)),
])
def test_kawamata_Kc2(basket, value):
    assert kawamata_Kc2(parse_basket(basket)) == value


@pytest.mark.parametrize("t, value", [(1, 5), (-1, 0), (0, 1), (2, 16)])
def test_chi_example_family(t, value):
    assert chi(X_FAMILY, t) == value


def test_genus():
    assert genus(X_FAMILY) == 14
    assert genus(P3) == 33
    # chi(2A) = 12 for the Pfaffian family, so g = 10
    assert genus(Y_FAMILY) == 10


def test_genus_rejects_nonintegral():
    with pytest.raises(InconsistentCandidate):
        genus(NumericalFano(2, Fraction(1, 2), parse_basket("3,1,1")))


def test_hilbert_coeffs():
    assert hilbert_coeffs(X_FAMILY, 2) == [1, 5, 16]
    assert hilbert_coeffs(Y_FAMILY, 3) == [1, 4, 12, 27]
    assert hilbert_coeffs(P3, 1) == [1, 4]
    with pytest.raises(InconsistentCandidate):
        hilbert_coeffs(NumericalFano(2, Fraction(10, 3)), 2)


def test_hilbert_coefficients_invariants():
    with pytest.raises(ValueError):
        HilbertCoefficients((2, 3))
    with pytest.raises(InconsistentCandidate):
        HilbertCoefficients((1, -1))


def test_numerical_fano_validation():
    with pytest.raises(InconsistentCandidate):
        NumericalFano(2, 1, parse_basket("2,1,1"))
    with pytest.raises(InconsistentCandidate):
        NumericalFano(3, 0)


@pytest.mark.parametrize("t, d, value", [(1, 1, 1), (2, 1, 3), (3, 2, Fraction(15, 4))])
def test_delpezzo_bound(t, d, value):
    assert delpezzo_linear_bound(t, d) == value


def test_delpezzo_bound_domain():
    with pytest.raises(ValueError):
        delpezzo_linear_bound(1, 7)


odd_types = st.sampled_from([make_type(r, b) for r in range(3, 31, 2) for b in range(1, r // 2 + 1)
                             if gcd(r, b) == 1])


@given(st.lists(odd_types, max_size=3), st.integers(1, 200), st.integers(-40, 40))
def test_serre_symmetry(types, k, t):
    basket = Basket.of(*types)
    if basket.contribution_sum >= 24:
        return
    nf = NumericalFano(2, Fraction(k, basket.index), basket)
    assert chi(nf, t) + chi(nf, -t - nf.q) == 0
