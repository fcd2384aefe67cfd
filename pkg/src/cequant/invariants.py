"""Invariant operators on symbols and the two Casimir operators.

The Euclidean commutant is generated by the sl(2) triple ``R, E, T`` and the
Heisenberg triple ``G, D, Delta``; the homothety-invariant combinations are
``E, R0 = R T, D, G0 = G T, Delta0 = Delta T``.  Indices are raised with the
flat metric, so for instance ``T = g_ij d_xi_i d_xi_j``.
"""

from __future__ import annotations

from functools import lru_cache

from gmpy2 import mpq

from .endo import EndoOperator, anticommutator, commutator
from .errors import ArgumentError, UnsupportedDimension
from .lie import conformal_generators, operator_lie_endo, symbol_lie_endo
from .poly import Signature, SymbolPolynomial, Weights
from .scalars import to_rational

__all__ = [
    "NAMES",
    "invariant_operator",
    "xi_upper_derivative",
    "casimir_symbols",
    "casimir_operators",
    "casimir_symbols_basis_sum",
    "casimir_operators_basis_sum",
]

NAMES = ("R", "E", "T", "G", "D", "Delta", "Euler", "R0", "G0", "Delta0", "Z", "C_sl2")


def xi_upper_derivative(sig: Signature, i: int) -> EndoOperator:
    """``d/dxi^i = g_ij d/dxi_j``."""
    return EndoOperator.d_xi(sig.n, i) * sig.sign(i)


def _sum(n, parts) -> EndoOperator:
    out = EndoOperator(n)
    for p in parts:
        out = out + p
    return out


@lru_cache(maxsize=None)
def _build(name: str, sig: Signature) -> EndoOperator:
    n = sig.n
    xi = lambda i: EndoOperator.multiplication(SymbolPolynomial.xi(n, i))
    dx = lambda i: EndoOperator.d_x(n, i)
    dxi = lambda i: EndoOperator.d_xi(n, i)
    idx = range(1, n + 1)
    if name == "R":
        return _sum(n, (xi(i) * xi(i) * sig.sign(i) for i in idx))
    if name == "Euler":
        return _sum(n, (xi(i) * dxi(i) for i in idx))
    if name == "E":
        return _build("Euler", sig) + mpq(n, 2)
    if name == "T":
        return _sum(n, (dxi(i) * dxi(i) * sig.sign(i) for i in idx))
    if name == "G":
        return _sum(n, (xi(i) * dx(i) * sig.sign(i) for i in idx))
    if name == "D":
        return _sum(n, (dxi(i) * dx(i) for i in idx))
    if name == "Delta":
        return _sum(n, (dx(i) * dx(i) * sig.sign(i) for i in idx))
    if name == "R0":
        return _build("R", sig) * _build("T", sig)
    if name == "G0":
        return _build("G", sig) * _build("T", sig)
    if name == "Delta0":
        return _build("Delta", sig) * _build("T", sig)
    if name == "C_sl2":
        E = _build("E", sig)
        return E * E - anticommutator(_build("R", sig), _build("T", sig)) * mpq(1, 2)
    if name == "Z":
        if n != 2:
            raise UnsupportedDimension("Z is only defined for n = 2")
        C = _build("C_sl2", sig)
        D, G = _build("D", sig), _build("G", sig)
        brackets = (anticommutator(D, commutator(G, C)) - anticommutator(G, commutator(D, C)))
        return (C + mpq(3, 2)) * _build("Delta", sig) + brackets * mpq(1, 4)
    raise ArgumentError(f"unknown invariant operator {name!r}; expected one of {NAMES}")


def invariant_operator(name: str, sig: Signature) -> EndoOperator:
    """One of ``R, E, T, G, D, Delta, Euler, R0, G0, Delta0, Z, C_sl2`` for this signature."""
    return _build(name, sig)


@lru_cache(maxsize=None)
def casimir_symbols(sig: Signature, delta) -> EndoOperator:
    """Closed form ``C_delta = R0 + 2(1 + n(delta-1) - Euler) Euler - n^2 delta(delta-1)``."""
    if sig.n < 2:
        raise UnsupportedDimension("Casimir operators need n >= 2")
    n = sig.n
    delta = to_rational(delta)
    eu = _build("Euler", sig)
    return (_build("R0", sig) + (eu * (2 * (1 + n * (delta - 1))) - eu * eu * 2)
            - n * n * delta * (delta - 1))


@lru_cache(maxsize=None)
def casimir_operators(sig: Signature, w: Weights) -> EndoOperator:
    """Closed form ``C_{lambda,mu} = C_delta + G0 - 2(n lambda + Euler) D``."""
    n = sig.n
    D = _build("D", sig)
    shifted = (_build("Euler", sig) + n * w.lam) * D
    return casimir_symbols(sig, w.delta) + _build("G0", sig) - shifted * 2


def _basis_sum(sig: Signature, rep) -> EndoOperator:
    basis = conformal_generators(sig)
    images = {gid: rep(X) for gid, X in zip(basis.ids, basis.generators)}
    out = EndoOperator(sig.n)
    for coeffs, gid in zip(basis.dual_coefficients, basis.ids):
        dual = _sum(sig.n, (images[g] * c for g, c in coeffs.items()))
        out = out + dual * images[gid]
    return out


def casimir_symbols_basis_sum(sig: Signature, delta) -> EndoOperator:
    """``sum_alpha L(X^alpha) L(X_alpha)`` over the Killing-dual basis, symbol action."""
    delta = to_rational(delta)
    return _basis_sum(sig, lambda X: symbol_lie_endo(X, delta))


def casimir_operators_basis_sum(sig: Signature, w: Weights) -> EndoOperator:
    """Same sum with the operator action."""
    return _basis_sum(sig, lambda X: operator_lie_endo(X, w))
