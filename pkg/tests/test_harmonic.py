import random

import pytest
import sympy as sp
from gmpy2 import mpq

from cequant.endo import endo_apply
from cequant.errors import ArgumentError
from cequant.harmonic import HarmonicComponent, decompose, gamma, project, rho
from cequant.invariants import casimir_symbols, invariant_operator
from cequant.poly import Signature, SymbolPolynomial, random_symbol
from cequant.resonance import delta_value

from conftest import SIGNATURES, X, XI
from oracles import harmonic_split, to_sympy, xi_symbols

E2 = Signature(2, 0)


def R_symbol(sig):
    return sum((XI(sig.n, i) ** 2 * sig.sign(i) for i in range(1, sig.n + 1)),
               SymbolPolynomial.zero(sig.n))


def test_rho_examples():
    assert rho(5, 0, E2) == 0
    assert rho(2, 1, E2) == 4
    assert rho(4, 2, Signature(3, 0)) == 20
    sig = Signature(3, 0)
    R = R_symbol(sig)
    assert endo_apply(invariant_operator("R0", sig), R ** 2) == R ** 2 * 20


def test_gamma_examples():
    d = mpq(2, 3)
    assert gamma(0, 0, Signature(3, 0), d) == -9 * d * (d - 1)
    assert gamma(2, 1, E2, 0) == -8
    for n in (2, 3, 4):
        assert gamma(1, 0, Signature(n, 0), 0) == -2 * n
        sig = Signature(n, 0)
        assert endo_apply(casimir_symbols(sig, 0), XI(n, 1)) == XI(n, 1) * (-2 * n)


@pytest.mark.parametrize("k, s", [(-1, 0), (2, 2), (3, -1), (1, 1)])
def test_range_errors(k, s):
    with pytest.raises(ArgumentError):
        rho(k, s, E2)
    with pytest.raises(ArgumentError):
        gamma(k, s, E2, 0)


def test_component_validation():
    with pytest.raises(ArgumentError):
        HarmonicComponent(2, 0, XI(2, 1))
    with pytest.raises(ArgumentError):
        HarmonicComponent(1, 1, XI(2, 1))


def test_decompose_examples():
    assert decompose(XI(2, 1), E2) == [HarmonicComponent(1, 0, XI(2, 1))]
    comps = decompose(XI(2, 1) ** 2, E2)
    assert comps == [HarmonicComponent(2, 0, (XI(2, 1) ** 2 - XI(2, 2) ** 2) / 2),
                     HarmonicComponent(2, 1, R_symbol(E2) / 2)]
    sig3 = Signature(3, 0)
    assert decompose(R_symbol(sig3) ** 2, sig3) == [HarmonicComponent(4, 2, R_symbol(sig3) ** 2)]
    assert decompose(SymbolPolynomial.zero(2), E2) == []


def test_project_examples():
    R = R_symbol(E2)
    assert project(R, 2, 1, E2) == R
    assert project(XI(2, 1) ** 2, 2, 1, E2) == R / 2
    assert project(XI(2, 1), 2, 0, E2).is_zero()


@pytest.mark.parametrize("sig", SIGNATURES)
@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_decompose_matches_linear_solve(sig, k):
    rng = random.Random(100 * k + sig.n + sig.q)
    n = sig.n
    syms = xi_symbols(n)
    ys = sp.symbols(f"y1:{n + 1}")
    P = random_symbol(n, k, 0, rng, nterms=8).xi_homogeneous(k) + XI(n, 1) ** k
    expected = harmonic_split(to_sympy(P, ys, syms), k, sig.signs(), syms)
    got = {c.s: to_sympy(c.part, ys, syms) for c in decompose(P, sig)}
    for s in range(k // 2 + 1):
        assert sp.expand(got.get(s, 0) - expected[s]) == 0


@pytest.mark.parametrize("sig", SIGNATURES)
def test_component_invariants(sig):
    rng = random.Random(17 + sig.q)
    R0 = invariant_operator("R0", sig)
    T = invariant_operator("T", sig)
    for k in range(6):
        P = random_symbol(sig.n, k, 2, rng, nterms=6)
        total = SymbolPolynomial.zero(sig.n)
        for c in decompose(P, sig):
            assert endo_apply(R0, c.part) == c.part * rho(c.k, c.s, sig)
            assert endo_apply(T ** (c.s + 1), c.part).is_zero()
            assert endo_apply(casimir_symbols(sig, mpq(1, 3)), c.part) \
                == c.part * gamma(c.k, c.s, sig, mpq(1, 3))
            assert project(c.part, c.k, c.s, sig) == c.part
            total = total + c.part
        assert total == P


def test_mixed_degrees_and_x_dependence():
    rng = random.Random(4)
    P = sum((random_symbol(2, k, 3, rng) for k in range(5)), SymbolPolynomial.zero(2))
    comps = decompose(P, E2)
    assert [(c.k, c.s) for c in comps] == sorted((c.k, c.s) for c in comps)
    assert sum((c.part for c in comps), SymbolPolynomial.zero(2)) == P


@pytest.mark.parametrize("n", [2, 3, 5])
def test_eigenvalue_gaps_positive(n):
    sig = Signature(n, 0)
    for k in range(13):
        for s in range(k // 2):
            gap = rho(k, s + 1, sig) - rho(k, s, sig)
            assert gap == 2 * (n + 2 * k - 4 * s - 4) and gap > 0


@pytest.mark.parametrize("n", [2, 3])
def test_gamma_collisions_match_delta_values(n):
    # gamma(k,s) - gamma(l,t) is linear in delta with slope 2n(k-l); its root is delta_value
    sig = Signature(n, 0)
    for k in range(1, 9):
        for l in range(k):
            for s in range(k // 2 + 1):
                for t in range(l // 2 + 1):
                    dv = delta_value(k, l, s, t, sig)
                    assert gamma(k, s, sig, dv) == gamma(l, t, sig, dv)
                    for other in (dv + 1, dv - mpq(1, 3)):
                        assert gamma(k, s, sig, other) != gamma(l, t, sig, other)
