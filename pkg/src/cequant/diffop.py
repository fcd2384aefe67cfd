"""Differential operators on R^n in sigma-symbol (normal-ordered) form.

An operator ``A = sum_a A_a(x) d^a`` is stored as the polynomial
``sum_a A_a(x) xi^a``; all derivatives sit to the right of the coefficients.
Equality of operators is equality of symbols.
"""

from __future__ import annotations

from .errors import ArgumentError
from .poly import OperatorSymbol, SymbolPolynomial, weyl_apply, weyl_product

__all__ = ["apply", "compose", "adjoint", "commutator", "multiplication"]


def apply(A: OperatorSymbol, f: SymbolPolynomial) -> SymbolPolynomial:
    """Apply the operator with symbol ``A`` to an x-only polynomial ``f``."""
    A._check(f)
    if not f.is_x_only():
        raise ArgumentError("apply() expects a function of x only (no xi)")
    n = A.n
    flat = {k[:n] + k[2 * n:]: c for k, c in f.terms.items()}
    out = weyl_apply(A.terms, flat, n)
    zeros = (0,) * n
    return SymbolPolynomial(n, {k[:n] + zeros + k[n:]: c for k, c in out.items()}, _trusted=True)


def compose(A: OperatorSymbol, B: OperatorSymbol) -> OperatorSymbol:
    """Symbol of ``A o B``: ``sum_l 1/l! d_xi^l(A) d_x^l(B)`` (no hbar factors)."""
    A._check(B)
    return SymbolPolynomial(A.n, weyl_product(A.terms, B.terms, A.n), _trusted=True)


def commutator(A: OperatorSymbol, B: OperatorSymbol) -> OperatorSymbol:
    return compose(A, B) - compose(B, A)


def multiplication(f: SymbolPolynomial) -> OperatorSymbol:
    """The zero-order operator ``u -> f u`` (its symbol is ``f`` itself)."""
    if not f.is_x_only():
        raise ArgumentError("multiplication operators need an x-only coefficient")
    return f


def adjoint(A: OperatorSymbol) -> OperatorSymbol:
    """Formal adjoint for the pairing ``int conj(phi) psi dx``.

    ``(A_a(x) d^a)^* = (-1)^|a| d^a o conj(A_a(x))``; hbar is treated as real.
    """
    n = A.n
    out = SymbolPolynomial.zero(n)
    zeros = (0,) * n
    for k, c in A.terms.items():
        deriv = k[n:2 * n]
        sign = -1 if sum(deriv) % 2 else 1
        if k[2 * n + 1]:
            sign = -sign
        left = {zeros + deriv + (0, 0): sign}
        right = {k[:n] + zeros + k[2 * n:]: c}
        out = out + SymbolPolynomial(n, weyl_product(left, right, n), _trusted=True)
    return out
