"""The equivariant quantization map and its closed forms.

``quantize_tilde`` sends each ``(k, s)`` piece of a symbol to the eigenvector
of the operator Casimir with the same eigenvalue and the same principal part.
That eigenvector is built top-down: writing ``C_{lambda,mu} = C_delta + N``
with ``N = G0 - 2(n lambda + Euler) D`` lowering xi-degree by one, the degree
``l`` part must satisfy ``(gamma_{k,s} - C_delta) P_l = N(P_{l+1})``, which is
solved piece by piece since ``C_delta`` is diagonal on ``(l, t)`` pieces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial
from typing import NamedTuple

from gmpy2 import mpq

from .endo import EndoOperator, endo_apply
from .errors import ArgumentError, CriticalResonance, SecondOrderResonance, UnsupportedDimension
from .harmonic import HarmonicComponent, _split_degree, decompose, gamma
from .invariants import invariant_operator
from .poly import OperatorSymbol, Signature, SymbolPolynomial, Weights

__all__ = [
    "TraceStep",
    "QuantizationResult",
    "solve_eigenvector",
    "quantize_tilde",
    "quantization_result",
    "inverse_quantize_tilde",
    "i_hbar",
    "quantize",
    "quantize_graded",
    "second_order_coefficients",
    "second_order_map",
    "second_order_resonances",
    "weyl_map",
    "first_order_closed_form",
]


class TraceStep(NamedTuple):
    """One division of the recurrence: ``(k, s)`` feeding ``(l, t)``."""
    k: int
    s: int
    l: int
    t: int
    divisor: mpq
    rhs_zero: bool


@dataclass(frozen=True)
class QuantizationResult:
    input: SymbolPolynomial
    output: OperatorSymbol
    weights: Weights
    trace: tuple = field(default_factory=tuple)

    def principal_symbol_preserved(self) -> bool:
        top = self.input.xi_degree()
        if top < 0:
            return self.output.is_zero()
        return self.output.xi_homogeneous(top) == self.input.xi_homogeneous(top) \
            and self.output.xi_degree() == top


def _check_n(sig: Signature) -> None:
    if sig.n < 2:
        raise UnsupportedDimension("the quantization map is only constructed for n >= 2")


def _lower(P: SymbolPolynomial, degree: int, w: Weights, sig: Signature) -> SymbolPolynomial:
    """``N(P) = G0(P) - 2(n lambda + degree - 1) D(P)`` for P of xi-degree ``degree``."""
    G0 = invariant_operator("G0", sig)
    D = invariant_operator("D", sig)
    out = endo_apply(G0, P)
    dp = endo_apply(D, P)
    if not dp.is_zero():
        c = 2 * (sig.n * w.lam + degree - 1)
        if c:
            out = out - dp * c
    return out


def _solve(comp: HarmonicComponent, w: Weights, sig: Signature, trace: list | None):
    k, s = comp.k, comp.s
    delta = w.delta
    top = gamma(k, s, sig, delta)
    total = comp.part
    current = comp.part
    for l in range(k - 1, -1, -1):
        rhs = _lower(current, l + 1, w, sig) if not current.is_zero() else current
        pieces = dict(_split_degree(rhs, l, sig)) if not rhs.is_zero() else {}
        nxt = SymbolPolynomial.zero(sig.n)
        for t in range(l // 2 + 1):
            divisor = top - gamma(l, t, sig, delta)
            y = pieces.get(t)
            if divisor == 0:
                if y is not None:
                    raise CriticalResonance(k, s, l, t, delta)
                if trace is not None:
                    trace.append(TraceStep(k, s, l, t, divisor, True))
                continue
            if y is None:
                continue
            if trace is not None:
                trace.append(TraceStep(k, s, l, t, divisor, False))
            nxt = nxt + y / divisor
        current = nxt
        total = total + current
    return total


def solve_eigenvector(comp: HarmonicComponent, w: Weights, sig: Signature,
                      trace: list | None = None) -> OperatorSymbol:
    """Casimir eigenvector with principal part ``comp.part``.

    Raises :class:`CriticalResonance` when a vanishing divisor meets a nonzero
    right-hand side.  Resonant steps whose right side vanishes are zero-filled.
    If ``trace`` is a list, every division performed (and every zero-filled
    resonant step) is appended to it as a :class:`TraceStep`.
    """
    _check_n(sig)
    if comp.part.n != sig.n:
        raise ArgumentError("component and signature dimension differ")
    return _solve(comp, w, sig, trace)


def quantization_result(P: SymbolPolynomial, w: Weights, sig: Signature) -> QuantizationResult:
    """:func:`quantize_tilde` together with the divisors it used."""
    _check_n(sig)
    trace: list = []
    out = SymbolPolynomial.zero(sig.n)
    for comp in decompose(P, sig):
        out = out + _solve(comp, w, sig, trace)
    return QuantizationResult(P, out, w, tuple(trace))


def quantize_tilde(P: SymbolPolynomial, w: Weights, sig: Signature) -> OperatorSymbol:
    """The equivariant map from weighted symbols to operator symbols (no hbar rescaling).

    A critical resonance anywhere in ``P`` aborts the whole computation.
    """
    _check_n(sig)
    out = SymbolPolynomial.zero(sig.n)
    for comp in decompose(P, sig):
        out = out + _solve(comp, w, sig, None)
    return out


def inverse_quantize_tilde(A: OperatorSymbol, w: Weights, sig: Signature) -> SymbolPolynomial:
    """Solve ``quantize_tilde(X) = A``.

    The map is the identity plus a xi-degree-lowering part, so the top-degree
    part of the remaining residual is always the next piece of ``X``.
    """
    _check_n(sig)
    X = SymbolPolynomial.zero(sig.n)
    residual = A
    while not residual.is_zero():
        piece = residual.xi_homogeneous(residual.xi_degree())
        X = X + piece
        residual = residual - quantize_tilde(piece, w, sig)
    return X


def i_hbar(P: SymbolPolynomial, invert: bool = False) -> SymbolPolynomial:
    """Multiply every xi-degree-m term by ``(i hbar)**m`` (or divide, with ``invert``)."""
    out = SymbolPolynomial.zero(P.n)
    for m, part in P.xi_degree_split():
        if m == 0:
            out = out + part
            continue
        if invert and any(k[2 * P.n] < m for k in part.terms):
            raise ArgumentError(f"cannot divide xi-degree {m} terms by hbar^{m}: hbar power too low")
        out = out + part.times_i_hbar(-m if invert else m)
    return out


def quantize(P: SymbolPolynomial, w: Weights, sig: Signature) -> OperatorSymbol:
    """``quantize_tilde(i_hbar(P))``: the symbol ``xi_j`` becomes ``i hbar d_j``."""
    return quantize_tilde(i_hbar(P), w, sig)


def quantize_graded(P: SymbolPolynomial, w: Weights, sig: Signature) -> SymbolPolynomial:
    """``i_hbar^{-1} o quantize_tilde o i_hbar``: the map written as a series in hbar."""
    return i_hbar(quantize_tilde(i_hbar(P), w, sig), invert=True)


# -- closed forms ------------------------------------------------------------


def second_order_resonances(n: int) -> tuple:
    """Shifts where the second-order closed form breaks down."""
    return (mpq(2, n), mpq(n + 2, 2 * n), mpq(1), mpq(n + 1, n), mpq(n + 2, n))


def second_order_coefficients(sig: Signature, w: Weights) -> tuple:
    """``(g1, ..., g5)`` of ``Id + g1 G0 + g2 D + g3 Euler D + g4 Delta0 + g5 D^2``."""
    n = sig.n
    lam, mu, delta = w.lam, w.mu, w.delta
    if delta in second_order_resonances(n):
        raise SecondOrderResonance(f"delta={delta} is resonant for the second-order map (n={n})")
    a = n * delta - 2
    b = n * (delta - 1) - 2
    c = n * (delta - 1) - 1
    d = n * (2 * delta - 1) - 2
    g1 = n * (lam + mu - 1) / (2 * a * b)
    g2 = lam / (1 - delta)
    g3 = (1 - lam - mu) / ((delta - 1) * b)
    quad = 2 + (4 * lam - 1) * n + (2 * lam * lam - lam * mu - mu * mu + 2 * mu - 1) * n * n
    g4 = n * lam * quad / (2 * c * d * a * b)
    g5 = n * lam * (n * lam + 1) / (2 * c * b)
    return g1, g2, g3, g4, g5


def second_order_map(sig: Signature, w: Weights) -> EndoOperator:
    """Closed form of ``quantize_tilde`` on symbols of xi-degree at most two."""
    _check_n(sig)
    g1, g2, g3, g4, g5 = second_order_coefficients(sig, w)
    G0 = invariant_operator("G0", sig)
    D = invariant_operator("D", sig)
    eu = invariant_operator("Euler", sig)
    Delta0 = invariant_operator("Delta0", sig)
    return (EndoOperator.identity(sig.n) + G0 * g1 + D * g2 + eu * D * g3
            + Delta0 * g4 + D * D * g5)


def weyl_map(P: SymbolPolynomial) -> SymbolPolynomial:
    """``sum_m (1/m!) (i hbar / 2)^m D^m (P)``, with ``D = d_xi_j d_x^j``."""
    n = P.n
    D = invariant_operator("D", Signature(n, 0))
    out = P
    term = P
    m = 0
    while True:
        term = endo_apply(D, term)
        m += 1
        if term.is_zero():
            return out
        out = out + term.times_i_hbar(m) * mpq(1, factorial(m) * 2 ** m)


def first_order_closed_form(P: SymbolPolynomial, lam, sig: Signature) -> SymbolPolynomial:
    """``A(P)`` in ``quantize_graded(P) = P + i hbar A(P) + O(hbar^2)`` for equal weights.

    Uses the closed second-order coefficients for xi-degree ``k <= 2`` and,
    for ``k > 2``, ``(D + (1-2 lam) n / (s(2s-2k-n+2)) G0) / 2`` on ``(k, s)``
    pieces with ``s > 0`` and ``(n lam + k - 1) / (n + 2(k - 1)) D`` on
    trace-free pieces.  Independent of the recurrence.
    """
    _check_n(sig)
    lam = Weights(lam, lam).lam
    n = sig.n
    G0 = invariant_operator("G0", sig)
    D = invariant_operator("D", sig)
    g1, g2, g3, _, _ = second_order_coefficients(sig, Weights(lam, lam))
    out = SymbolPolynomial.zero(n)
    for comp in decompose(P, sig):
        k, s, part = comp.k, comp.s, comp.part
        if k <= 2:
            a, b = g2 + g3 * max(k - 1, 0), g1
        elif s > 0:
            a, b = mpq(1, 2), (1 - 2 * lam) * n / (4 * s * (2 * s - 2 * k - n + 2))
        else:
            a, b = (n * lam + k - 1) / (n + 2 * (k - 1)), mpq(0)
        if a:
            out = out + endo_apply(D, part) * a
        if b:
            out = out + endo_apply(G0, part) * b
    return out
