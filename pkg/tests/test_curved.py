import random

import pytest
import sympy as sp
from gmpy2 import mpq

from cequant import diffop
from cequant.curved import (MetricJet, TaylorJet, christoffel, curvature_at_origin,
                            geodesic_flow_check, laplace_beltrami, quantum_hamiltonian,
                            scalar_curvature, yamabe_constant)
from cequant.errors import ArgumentError, DimensionError, JetOrderError
from cequant.poly import Signature, SymbolPolynomial, Weights, random_symbol
from cequant.verify import random_jet

from conftest import X, XI
from oracles import laplace_beltrami_sympy, scalar_curvature_sympy, taylor, to_sympy

HALF = Weights(mpq(1, 2), mpq(1, 2))


def jet_to_sympy(J, xs):
    return to_sympy(J.poly, xs, ())


def test_jet_arithmetic_examples():
    x = TaylorJet.variable(1, 2, 1)
    one = TaylorJet.constant(1, 2)
    a = one + x
    assert a.inv() == TaylorJet(1, 2, {(0,): 1, (1,): -1, (2,): 1})
    assert a.pow(mpq(1, 2)) == TaylorJet(1, 2, {(0,): 1, (1,): mpq(1, 2), (2,): mpq(-1, 8)})
    J = random_jet(3, 4, random.Random(1))
    assert J * J.inv() == TaylorJet.constant(3, 4)
    assert J.pow(mpq(3, 2)) * J.pow(mpq(-1, 2)) == J
    assert J.pow(mpq(1, 3)) ** 3 == J


def test_jet_errors():
    with pytest.raises(ArgumentError):
        TaylorJet.constant(2, 2, 0).inv()
    with pytest.raises(ArgumentError):
        TaylorJet.constant(2, 2, 2).pow(mpq(1, 2))
    with pytest.raises(JetOrderError):
        TaylorJet.constant(2, 0).diff(1)
    with pytest.raises(ArgumentError):
        TaylorJet(2, -1)
    with pytest.raises(DimensionError):
        TaylorJet(2, 2, {(1,): 1})
    with pytest.raises(ArgumentError):
        TaylorJet(2, 2, XI(2, 1))
    with pytest.raises(ArgumentError):
        MetricJet(TaylorJet.constant(2, 4, 2), Signature(2, 0))


def test_jet_truncation_and_order():
    J = random_jet(2, 4, random.Random(2))
    assert all(sum(e) <= 4 for e in J.coefficients())
    assert (J * J.truncate(2)).order == 2
    assert J.diff(1).order == 3


def test_flat_curvature():
    m = MetricJet(TaylorJet.constant(3, 2), Signature(3, 0))
    assert curvature_at_origin(m) == 0
    assert all(c.poly.is_zero() for row in christoffel(m) for cols in row for c in cols)


def test_quadratic_factor_curvature():
    xs = sp.symbols("y1:4")
    F = TaylorJet(3, 2, {(0, 0, 0): 1, (2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1})
    m = MetricJet(F, Signature(3, 0))
    oracle = scalar_curvature_sympy(jet_to_sympy(F, xs), xs, (1, 1, 1)).subs({x: 0 for x in xs})
    assert oracle == -12
    assert curvature_at_origin(m) == -12


def test_sphere_is_positive():
    # stereographic round metric 4/(1+|x|^2)^2 rescaled to F(0)=1
    xs = sp.symbols("y1:3")
    expr = (1 + xs[0] ** 2 + xs[1] ** 2) ** -2
    F = TaylorJet(2, 2, {(0, 0): 1, (2, 0): -2, (0, 2): -2})
    assert jet_to_sympy(F, xs) == taylor(expr, xs, 2)
    assert curvature_at_origin(MetricJet(F, Signature(2, 0))) == 8


@pytest.mark.parametrize("sig", [Signature(2, 0), Signature(3, 0), Signature(1, 1), Signature(2, 1)])
def test_curvature_matches_sympy(sig):
    rng = random.Random(sig.n * 3 + sig.q)
    xs = sp.symbols(f"y1:{sig.n + 1}")
    for _ in range(2):
        F = random_jet(sig.n, 3, rng)
        m = MetricJet(F, sig)
        R = scalar_curvature(m)
        oracle = taylor(scalar_curvature_sympy(jet_to_sympy(F, xs), xs, sig.signs()), xs, 1)
        assert sp.expand(jet_to_sympy(R, xs) - oracle) == 0


@pytest.mark.parametrize("n", [2, 3, 4])
def test_curvature_conformal_formula(n):
    # F = e^{2 phi}: R(0) = -(n-1)(2 Lap phi + (n-2)|grad phi|^2) at the origin
    rng = random.Random(n)
    xs = sp.symbols(f"y1:{n + 1}")
    F = random_jet(n, 2, rng)
    phi = sp.log(jet_to_sympy(F, xs)) / 2
    at0 = {x: 0 for x in xs}
    lap = sum(sp.diff(phi, x, 2) for x in xs).subs(at0)
    grad2 = sum(sp.diff(phi, x) ** 2 for x in xs).subs(at0)
    expected = -(n - 1) * (2 * lap + (n - 2) * grad2)
    assert curvature_at_origin(MetricJet(F, Signature(n, 0))) == mpq(str(sp.nsimplify(expected)))


def test_curvature_scaling():
    rng = random.Random(12)
    F = random_jet(3, 2, rng)
    c = mpq(3, 2)
    scaled = TaylorJet(3, 2, {e: v / c ** sum(e) for e, v in F.coefficients().items()})
    sig = Signature(3, 0)
    assert curvature_at_origin(MetricJet(scaled, sig)) == curvature_at_origin(MetricJet(F, sig)) / c ** 2


@pytest.mark.parametrize("sig", [Signature(2, 0), Signature(1, 1)])
def test_laplace_beltrami_matches_sympy(sig):
    rng = random.Random(5)
    n, r = sig.n, 3
    xs = sp.symbols(f"y1:{n + 1}")
    F = random_jet(n, r, rng)
    LB = laplace_beltrami(MetricJet(F, sig))
    for _ in range(3):
        f = random_symbol(n, 0, 3, rng, nterms=4)
        ours = to_sympy(diffop.apply(LB, f).truncate_x(r - 1), xs, ())
        oracle = taylor(laplace_beltrami_sympy(jet_to_sympy(F, xs), xs, sig.signs(), to_sympy(f, xs, ())),
                        xs, r - 1)
        assert sp.expand(ours - oracle) == 0


def test_quantum_hamiltonian_examples():
    sig = Signature(2, 0)
    flat = MetricJet(TaylorJet.constant(2, 4), sig)
    ih = SymbolPolynomial.imag_unit(2) * SymbolPolynomial.hbar(2)
    assert quantum_hamiltonian(XI(2, 1), flat, HALF) == ih * XI(2, 1)
    H = XI(2, 1) ** 2 + XI(2, 2) ** 2
    assert quantum_hamiltonian(H, flat, HALF) == -(SymbolPolynomial.hbar(2) ** 2) * H
    with pytest.raises(ArgumentError):
        quantum_hamiltonian(H, flat, Weights(mpq(1, 3), mpq(1, 3)))
    with pytest.raises(JetOrderError):
        quantum_hamiltonian(XI(2, 1) ** 5, flat, HALF)


def test_quantum_hamiltonian_zeroth_order_corrections():
    # conjugation contributes x-dependent zeroth-order terms; compare with a direct expansion
    sig = Signature(2, 0)
    rng = random.Random(8)
    F = random_jet(2, 4, rng)
    m = MetricJet(F, sig)
    w = Weights(mpq(1, 3), mpq(2, 3))
    P = XI(2, 1) * X(2, 2)
    A = diffop.compose(diffop.compose(m.volume_power(-w.mu).poly, X(2, 2) * XI(2, 1).times_i_hbar(1)),
                       m.volume_power(w.lam).poly)
    # quantize(x2 xi1) at these weights is i hbar (x2 xi1) since D(x2 xi1) = 0 and G0 kills degree 1
    assert quantum_hamiltonian(P, m, w) == A.truncate_x(3)


def test_conjugation_round_trip():
    sig = Signature(3, 0)
    rng = random.Random(9)
    m = MetricJet(random_jet(3, 4, rng), sig)
    A = random_symbol(3, 2, 2, rng, nterms=5)
    a = m.volume_power(mpq(2, 5)).poly
    b = m.volume_power(mpq(-2, 5)).poly
    back = diffop.compose(b, diffop.compose(a, A))
    assert back.truncate_x(4) == A.truncate_x(4)


def test_zero_first_jet_isolates_curvature():
    sig = Signature(3, 0)
    F = random_jet(3, 4, random.Random(10), flat_first_order=True)
    m = MetricJet(F, sig)
    rep = geodesic_flow_check(m)
    assert rep.passed
    # at the origin: -hbar^2 (flat Laplacian - c_n R(0))
    origin = SymbolPolynomial(3, {k: c for k, c in rep.quantum.terms.items() if sum(k[:3]) == 0})
    flat = sum((XI(3, i) ** 2 for i in (1, 2, 3)), SymbolPolynomial.zero(3))
    expected = -(SymbolPolynomial.hbar(3) ** 2) * (flat - yamabe_constant(3) * rep.curvature_at_origin)
    assert origin == expected


def test_yamabe_constant():
    assert yamabe_constant(2) == mpq(1, 4)
    assert yamabe_constant(3) == mpq(9, 40)


@pytest.mark.parametrize("sig", [Signature(2, 0), Signature(3, 0), Signature(1, 1), Signature(2, 1)])
def test_geodesic_flow_passes(sig):
    assert geodesic_flow_check(MetricJet(TaylorJet.constant(sig.n, 4), sig)).passed
    rng = random.Random(21 + sig.n)
    for _ in range(2):
        rep = geodesic_flow_check(MetricJet(random_jet(sig.n, 4, rng), sig))
        assert rep.passed, rep.differences
        assert rep.compared_degree == 2


def test_geodesic_constant_is_sharp():
    # with weights other than one half the same comparison fails
    sig = Signature(2, 0)
    m = MetricJet(random_jet(2, 4, random.Random(3)), sig)
    rep = geodesic_flow_check(m)
    other = quantum_hamiltonian(
        sum((XI(2, i) ** 2 * m.inverse()[i - 1][i - 1].poly for i in (1, 2)), SymbolPolynomial.zero(2)),
        m, Weights(mpq(1, 3), mpq(2, 3)))
    assert other.truncate_x(2) != rep.quantum


def test_geodesic_errors_and_report():
    sig = Signature(2, 0)
    with pytest.raises(JetOrderError):
        geodesic_flow_check(MetricJet(TaylorJet.constant(2, 1), sig))
    m = MetricJet(TaylorJet.constant(2, 4), sig)
    with pytest.raises(ArgumentError):
        geodesic_flow_check(m, Signature(1, 1))
    doc = geodesic_flow_check(m).as_dict()
    assert doc["passed"] is True and doc["differences"] == [] and doc["r"] == 4
