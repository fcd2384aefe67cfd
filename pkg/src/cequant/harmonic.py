"""Splitting symbols into ``(k, s)`` pieces ``R^s Q`` with ``Q`` trace-free.

Within a fixed xi-degree ``k`` the operator ``R0 = R T`` is diagonal with the
distinct eigenvalues ``rho(k, s)``, ``0 <= 2s <= k``, so each piece is cut
out by the Lagrange projector ``prod_{t != s} (R0 - rho_t) / (rho_s - rho_t)``.
x-dependence of coefficients is untouched by ``R0``.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .endo import endo_apply
from .errors import ArgumentError
from .invariants import invariant_operator
from .poly import Signature, SymbolPolynomial
from .scalars import to_rational

__all__ = ["HarmonicComponent", "rho", "gamma", "decompose", "project"]


def _check_range(k: int, s: int) -> None:
    if not (isinstance(k, int) and isinstance(s, int)) or k < 0 or s < 0 or 2 * s > k:
        raise ArgumentError(f"need 0 <= 2s <= k, got k={k}, s={s}")


def rho(k: int, s: int, sig: Signature) -> mpq:
    """Eigenvalue of ``R0`` on ``R^s Q``: ``2s(n + 2(k - s - 1))``."""
    _check_range(k, s)
    return mpq(2 * s * (sig.n + 2 * (k - s - 1)))


def gamma(k: int, s: int, sig: Signature, delta) -> mpq:
    """Eigenvalue of the symbol Casimir on the ``(k, s)`` piece."""
    n = sig.n
    delta = to_rational(delta)
    return rho(k, s, sig) + 2 * k * (1 + n * (delta - 1) - k) - n * n * delta * (delta - 1)


@dataclass(frozen=True)
class HarmonicComponent:
    k: int
    s: int
    part: SymbolPolynomial

    def __post_init__(self):
        _check_range(self.k, self.s)
        if any(d != self.k for d, _ in self.part.xi_degree_split()):
            raise ArgumentError(f"part is not xi-homogeneous of degree {self.k}")


def _lagrange(values: list, s: int) -> list:
    """Coefficients (in increasing powers of z) of the Lagrange basis polynomial for node ``s``."""
    coeffs = [mpq(1)]
    for t, v in enumerate(values):
        if t == s:
            continue
        denom = values[s] - v
        nxt = [mpq(0)] * (len(coeffs) + 1)
        for j, c in enumerate(coeffs):
            nxt[j + 1] += c / denom
            nxt[j] -= c * v / denom
        coeffs = nxt
    return coeffs


def _split_degree(P: SymbolPolynomial, k: int, sig: Signature) -> list:
    """All ``(s, part)`` with nonzero part, for a xi-homogeneous ``P`` of degree ``k``."""
    smax = k // 2
    if smax == 0:
        return [(0, P)] if not P.is_zero() else []
    R0 = invariant_operator("R0", sig)
    krylov = [P]
    for _ in range(smax):
        krylov.append(endo_apply(R0, krylov[-1]))
    values = [rho(k, s, sig) for s in range(smax + 1)]
    out = []
    for s in range(smax + 1):
        part = SymbolPolynomial.zero(P.n)
        for c, v in zip(_lagrange(values, s), krylov):
            if c:
                part = part + v * c
        if not part.is_zero():
            out.append((s, part))
    return out


def decompose(P: SymbolPolynomial, sig: Signature) -> list[HarmonicComponent]:
    """Components ``P_{k,s}`` summing to ``P``, ordered by ``(k, s)``."""
    if P.n != sig.n:
        raise ArgumentError("signature and polynomial dimension differ")
    out = []
    for k, Pk in P.xi_degree_split():
        for s, part in _split_degree(Pk, k, sig):
            out.append(HarmonicComponent(k, s, part))
    return out


def project(P: SymbolPolynomial, k: int, s: int, sig: Signature) -> SymbolPolynomial:
    """The ``(k, s)`` component of ``P`` (zero if there is none)."""
    _check_range(k, s)
    Pk = P.xi_homogeneous(k)
    for t, part in _split_degree(Pk, k, sig):
        if t == s:
            return part
    return SymbolPolynomial.zero(P.n)
