from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, settings

from cequant.errors import ArgumentError, DimensionError
from cequant.poly import Signature, SymbolPolynomial, Weights
from cequant.scalars import ScaledCoefficient, format_rational, to_rational

from conftest import X, XI, symbols, xs


# -- scalars ------------------------------------------------------------------

@pytest.mark.parametrize("raw, expected", [
    ("3/2", mpq(3, 2)), ("-6/4", mpq(-3, 2)), (" 7 ", mpq(7)), (Fraction(2, 6), mpq(1, 3)),
    (5, mpq(5)), (mpq(1, 9), mpq(1, 9)),
])
def test_to_rational_accepts(raw, expected):
    assert to_rational(raw) == expected


@pytest.mark.parametrize("raw", ["1/0", "1.5", "a/b", "", 0.5, True, None, "1/-2"])
def test_to_rational_rejects(raw):
    with pytest.raises(ArgumentError):
        to_rational(raw)


def test_format_rational_lowest_terms():
    assert format_rational(mpq(6, 4)) == "3/2"
    assert format_rational(mpq(-4, 2)) == "-2"
    assert format_rational(0) == "0"


def test_scaled_coefficient_arithmetic():
    a = ScaledCoefficient("1/2", "1", 1)
    b = ScaledCoefficient("2", "-1/3", 2)
    p = a * b
    # (1/2 + i)(2 - i/3) = 1 + 1/3 + i(2 - 1/6)
    assert (p.re, p.im, p.hpow) == (mpq(4, 3), mpq(11, 6), 3)
    assert (a + a).re == 1
    with pytest.raises(ArgumentError):
        a + b
    assert a.conjugate().im == -1
    assert str(ScaledCoefficient(0, 1, 1)) == "1i*hbar"


def test_scaled_coefficient_rejects_negative_hbar():
    with pytest.raises(ArgumentError):
        ScaledCoefficient(1, 0, -1)


# -- ring operations ----------------------------------------------------------

def test_monomial_product():
    assert XI(2, 1) * X(2, 1) == xs(2, [1, 0], [1, 0])


def test_binomial_expansion():
    s = XI(2, 1) + XI(2, 2)
    assert s ** 2 == XI(2, 1) ** 2 + XI(2, 2) ** 2 + XI(2, 1) * XI(2, 2) * 2


def test_rational_scaling():
    assert (XI(2, 1) * mpq(1, 2)) * (X(2, 1) * mpq(2, 3)) == xs(2, [1, 0], [1, 0], coeff=mpq(1, 3))


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        XI(2, 1) + XI(3, 1)
    with pytest.raises(DimensionError):
        XI(2, 1) * XI(3, 1)


def test_no_stored_zero_coefficients():
    P = XI(2, 1) - XI(2, 1)
    assert P.is_zero() and P.terms == {}
    assert SymbolPolynomial(2, {(0, 0, 1, 0, 0, 0): 0}).terms == {}


def test_imaginary_unit_squares_to_minus_one():
    i = SymbolPolynomial.imag_unit(2)
    assert i * i == -1
    assert (i * SymbolPolynomial.hbar(2)).coefficients()[((0, 0), (0, 0))] == [ScaledCoefficient(0, 1, 1)]


@settings(max_examples=40, deadline=None)
@given(symbols(real=False), symbols(real=False), symbols(real=False))
def test_ring_axioms(P, Q, R):
    assert (P + Q) + R == P + (Q + R)
    assert P * (Q + R) == P * Q + P * R
    assert P * Q == Q * P
    assert (P * Q) * R == P * (Q * R)
    assert P - P == 0


# -- derivatives --------------------------------------------------------------

def test_differentiate_examples():
    assert (XI(2, 1) ** 2).diff("xi", 1) == XI(2, 1) * 2
    assert (X(2, 1) * XI(2, 2)).diff("x", 1) == XI(2, 2)
    assert X(2, 1).diff("xi", 2).is_zero()


def test_differentiate_validates():
    with pytest.raises(ArgumentError):
        X(2, 1).diff("y", 1)
    with pytest.raises(ArgumentError):
        X(2, 1).diff("x", 3)
    with pytest.raises(ArgumentError):
        X(2, 1).diff("x", 0)


@settings(max_examples=30, deadline=None)
@given(symbols(n=3, real=False))
def test_partials_commute(P):
    kinds = [("x", i) for i in (1, 2, 3)] + [("xi", i) for i in (1, 2, 3)]
    for a in kinds:
        for b in kinds:
            assert P.diff(*a).diff(*b) == P.diff(*b).diff(*a)


# -- metric -------------------------------------------------------------------

def test_raise_index_examples():
    assert XI(2, 1).raise_index(Signature(1, 1), "xi", 1) == XI(2, 1)
    assert XI(2, 2).raise_index(Signature(1, 1), "xi", 2) == -XI(2, 2)
    sig = Signature(1, 1)
    contraction = sum((X(2, i).raise_index(sig, "x", i) * X(2, i) for i in (1, 2)),
                      SymbolPolynomial.zero(2))
    assert contraction == X(2, 1) ** 2 - X(2, 2) ** 2


@settings(max_examples=30, deadline=None)
@given(symbols(n=3, real=False))
def test_raise_index_involution(P):
    sig = Signature(1, 2)
    for kind in ("x", "xi"):
        for i in (1, 2, 3):
            assert P.raise_index(sig, kind, i).raise_index(sig, kind, i) == P


def test_signature_validation():
    assert Signature(2, 1).signs() == (1, 1, -1)
    assert Signature.euclidean(3) == Signature(3, 0)
    with pytest.raises(ArgumentError):
        Signature(0, 0)


def test_weights_delta():
    w = Weights("1/3", "3/4")
    assert w.delta == mpq(5, 12)
    assert Weights.from_delta(mpq(1, 3), mpq(5, 12)) == w
    assert Weights.symmetric(mpq(1, 3)) == Weights(mpq(1, 3), mpq(2, 3))


# -- grading ------------------------------------------------------------------

def test_xi_degree_split_examples():
    P = X(2, 1) * XI(2, 1) + XI(2, 2) ** 2
    assert P.xi_degree_split() == [(1, X(2, 1) * XI(2, 1)), (2, XI(2, 2) ** 2)]
    assert SymbolPolynomial.zero(2).xi_degree_split() == []
    ih = SymbolPolynomial.imag_unit(2) * SymbolPolynomial.hbar(2)
    parts = (XI(2, 1) + ih * XI(2, 1)).xi_degree_split()
    assert [k for k, _ in parts] == [1]


@settings(max_examples=40, deadline=None)
@given(symbols(n=3, xi_degree=4, real=False))
def test_xi_degree_split_sums_to_input(P):
    parts = P.xi_degree_split()
    total = SymbolPolynomial.zero(3)
    for k, part in parts:
        assert all(d == k for d, _ in part.xi_degree_split())
        total = total + part
    assert total == P


def test_times_i_hbar_cycles():
    P = XI(2, 1)
    assert P.times_i_hbar(2) == -(P * SymbolPolynomial.hbar(2) ** 2)
    assert P.times_i_hbar(4).times_i_hbar(-4) == P


def test_conjugate_and_real_part():
    i = SymbolPolynomial.imag_unit(2)
    P = XI(2, 1) + i * X(2, 1)
    assert P.conjugate() == XI(2, 1) - i * X(2, 1)
    assert P.real_part() == XI(2, 1)
    assert not P.is_real() and P.real_part().is_real()
