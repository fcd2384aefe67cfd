"""The product on symbols induced by composing quantized operators.

With equal weights ``lambda = mu`` the map ``quantize`` identifies symbols and
operators, and ``P * Q = quantize^{-1}(quantize(P) o quantize(Q))`` is an
associative deformation of the pointwise product in powers of ``hbar``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import diffop
from .errors import ArgumentError
from .poly import Signature, SymbolPolynomial, Weights
from .quantizer import i_hbar, inverse_quantize_tilde, quantize
from .scalars import to_rational

__all__ = ["StarTruncation", "star", "star_deviation", "poisson_bracket", "hochschild"]


@dataclass(frozen=True)
class StarTruncation:
    """Keep powers of hbar up to ``order`` for the weight ``lam``."""

    order: int = 2
    lam: object = 0

    def __post_init__(self):
        if not isinstance(self.order, int) or isinstance(self.order, bool) or self.order < 0:
            raise ArgumentError("truncation order must be a non-negative int")
        object.__setattr__(self, "lam", to_rational(self.lam))

    @property
    def weights(self) -> Weights:
        return Weights(self.lam, self.lam)


def poisson_bracket(P: SymbolPolynomial, Q: SymbolPolynomial) -> SymbolPolynomial:
    """``{P, Q} = d_xi_i P d_i Q - d_i P d_xi_i Q``."""
    P._check(Q)
    out = SymbolPolynomial.zero(P.n)
    for i in range(1, P.n + 1):
        out = out + P.diff_xi(i) * Q.diff_x(i) - P.diff_x(i) * Q.diff_xi(i)
    return out


def hochschild(A, P: SymbolPolynomial, Q: SymbolPolynomial) -> SymbolPolynomial:
    """Coboundary of a 1-cochain: ``A(P) Q + P A(Q) - A(PQ)``."""
    return A(P) * Q + P * A(Q) - A(P * Q)


def star(P: SymbolPolynomial, Q: SymbolPolynomial, cfg: StarTruncation,
         sig: Signature) -> SymbolPolynomial:
    """``P * Q`` truncated after ``hbar**cfg.order``."""
    w = cfg.weights
    product = diffop.compose(quantize(P, w, sig), quantize(Q, w, sig))
    return i_hbar(inverse_quantize_tilde(product, w, sig), invert=True).truncate_hbar(cfg.order)


def star_deviation(P: SymbolPolynomial, Q: SymbolPolynomial, lam,
                   sig: Signature) -> SymbolPolynomial:
    """First-order failure of ``*`` to be a star product.

    Returns ``B`` with ``P * Q = PQ + i hbar ({P,Q}/2 + B) + O(hbar^2)``; it
    vanishes identically exactly when ``lam = 1/2``.
    """
    first = star(P, Q, StarTruncation(1, lam), sig).hbar_part(1)
    return -(first * SymbolPolynomial.imag_unit(P.n)) - poisson_bracket(P, Q) / 2
