"""Lie derivatives on densities, weighted symbols and differential operators.

Densities are trivialised by ``|dx^1...dx^n|`` so a lambda-density is a
function and ``Div(X) = d_i X^i``.  The conformal algebra o(p+1,q+1) is
realised by polynomial vector fields (translations, rotations/boosts, the
dilation and the inversions).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial

from gmpy2 import mpq

from . import diffop
from .endo import EndoOperator
from .errors import ArgumentError, DimensionError, UnsupportedDimension
from .poly import Signature, SymbolPolynomial, Weights, _idx
from .scalars import to_rational

__all__ = [
    "VectorField",
    "ConformalBasis",
    "conformal_generators",
    "generator",
    "density_lie",
    "symbol_lie",
    "operator_lie",
    "symbol_lie_endo",
    "operator_lie_endo",
    "vf_bracket",
    "killing_form",
]


@dataclass(frozen=True)
class VectorField:
    """``X = X^i d/dx^i`` with polynomial components."""

    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ArgumentError("a vector field needs at least one component")
        n = comps[0].n
        for c in comps:
            if c.n != n or len(comps) != n:
                raise DimensionError("vector field components must all live on R^n")
            if not c.is_x_only():
                raise ArgumentError("vector field components must not depend on xi")
        object.__setattr__(self, "components", comps)

    @property
    def n(self) -> int:
        return len(self.components)

    @classmethod
    def from_symbol(cls, P: SymbolPolynomial) -> "VectorField":
        """Read ``X`` off a symbol ``X^i xi_i`` of xi-degree one."""
        if any(d != 1 for d, _ in P.xi_degree_split()):
            raise ArgumentError("a vector field symbol must be xi-homogeneous of degree 1")
        return cls(tuple(P.diff_xi(i) for i in range(1, P.n + 1)))

    def as_symbol(self) -> SymbolPolynomial:
        out = SymbolPolynomial.zero(self.n)
        for i, c in enumerate(self.components, 1):
            out = out + c * SymbolPolynomial.xi(self.n, i)
        return out

    def divergence(self) -> SymbolPolynomial:
        out = SymbolPolynomial.zero(self.n)
        for i, c in enumerate(self.components, 1):
            out = out + c.diff_x(i)
        return out

    def __call__(self, f: SymbolPolynomial) -> SymbolPolynomial:
        """Derivative of ``f`` along ``X`` (x-derivatives only)."""
        out = SymbolPolynomial.zero(self.n)
        for i, c in enumerate(self.components, 1):
            out = out + c * f.diff_x(i)
        return out

    def __add__(self, other: "VectorField") -> "VectorField":
        return VectorField(tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "VectorField") -> "VectorField":
        return VectorField(tuple(a - b for a, b in zip(self.components, other.components)))

    def scale(self, c) -> "VectorField":
        return VectorField(tuple(a.scale(c) for a in self.components))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)


def vf_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """``[X, Y]^i = X(Y^i) - Y(X^i)``."""
    if X.n != Y.n:
        raise DimensionError("vector fields on different R^n")
    return VectorField(tuple(X(b) - Y(a) for a, b in zip(X.components, Y.components)))


# -- actions -------------------------------------------------------------------


def density_lie(X: VectorField, f: SymbolPolynomial, lam) -> SymbolPolynomial:
    """``L^lambda_X f = X(f) + lambda Div(X) f``."""
    return X(f) + X.divergence() * f * to_rational(lam)


def symbol_lie(X: VectorField, P: SymbolPolynomial, delta) -> SymbolPolynomial:
    """Lie derivative of a delta-weighted symbol: the cotangent lift plus ``delta Div(X)``."""
    n = X.n
    out = X(P)
    for i in range(1, n + 1):
        dP = P.diff_xi(i)
        if dP.is_zero():
            continue
        lifted = SymbolPolynomial.zero(n)
        for j, c in enumerate(X.components, 1):
            dc = c.diff_x(i)
            if not dc.is_zero():
                lifted = lifted + dc * SymbolPolynomial.xi(n, j)
        out = out - lifted * dP
    delta = to_rational(delta)
    if delta:
        out = out + X.divergence() * P * delta
    return out


def _density_operator(X: VectorField, weight) -> SymbolPolynomial:
    """Symbol of ``L^weight_X`` acting on weight-densities: ``X^i xi_i + weight Div(X)``."""
    return X.as_symbol() + X.divergence() * to_rational(weight)


def operator_lie(X: VectorField, A: SymbolPolynomial, w: Weights) -> SymbolPolynomial:
    """``L^mu_X o A - A o L^lambda_X`` by honest operator composition."""
    return (diffop.compose(_density_operator(X, w.mu), A)
            - diffop.compose(A, _density_operator(X, w.lam)))


def symbol_lie_endo(X: VectorField, delta) -> EndoOperator:
    """:func:`symbol_lie` as a normal-ordered endomorphism."""
    n = X.n
    out = EndoOperator.multiplication(X.divergence() * to_rational(delta))
    for i in range(1, n + 1):
        out = out + EndoOperator.multiplication(X.components[i - 1]) * EndoOperator.d_x(n, i)
        lifted = SymbolPolynomial.zero(n)
        for j, c in enumerate(X.components, 1):
            lifted = lifted + c.diff_x(i) * SymbolPolynomial.xi(n, j)
        out = out - EndoOperator.multiplication(lifted) * EndoOperator.d_xi(n, i)
    return out


def operator_lie_endo(X: VectorField, w: Weights) -> EndoOperator:
    """:func:`operator_lie` as a normal-ordered endomorphism.

    Expanding the composition gives ``X^i d_i + delta Div(X)`` minus
    ``sum_{|g|>=1} (1/g!) d_x^g(X^j xi_j + lambda Div X) d_xi^g``.
    """
    n = X.n
    out = EndoOperator.multiplication(X.divergence() * w.delta)
    for i in range(1, n + 1):
        out = out + EndoOperator.multiplication(X.components[i - 1]) * EndoOperator.d_x(n, i)
    right = _density_operator(X, w.lam)
    top = right.x_degree()
    for order in range(1, top + 1):
        for gam in itertools.combinations_with_replacement(range(1, n + 1), order):
            coeff = right
            for i in gam:
                coeff = coeff.diff_x(i)
            if coeff.is_zero():
                continue
            mult = 1
            for i in set(gam):
                mult *= factorial(gam.count(i))
            d = EndoOperator.identity(n)
            for i in gam:
                d = d * EndoOperator.d_xi(n, i)
            out = out - EndoOperator.multiplication(coeff) * d * mpq(1, mult)
    return out


# -- the conformal algebra -------------------------------------------------------


def _x_lower(sig: Signature, i: int) -> SymbolPolynomial:
    """``x_i = g_ij x^j``."""
    return SymbolPolynomial.x(sig.n, i).scale(sig.sign(i))


def _translation(sig: Signature, i: int) -> VectorField:
    n = sig.n
    return VectorField(tuple(SymbolPolynomial.constant(n, 1 if k == i else 0)
                             for k in range(1, n + 1)))


def _rotation(sig: Signature, i: int, j: int) -> VectorField:
    """``X_ij = x_i d_j - x_j d_i``."""
    n = sig.n
    comps = []
    for k in range(1, n + 1):
        c = SymbolPolynomial.zero(n)
        if k == j:
            c = c + _x_lower(sig, i)
        if k == i:
            c = c - _x_lower(sig, j)
        comps.append(c)
    return VectorField(tuple(comps))


def _dilation(sig: Signature) -> VectorField:
    n = sig.n
    return VectorField(tuple(SymbolPolynomial.x(n, k) for k in range(1, n + 1)))


def _inversion(sig: Signature, i: int) -> VectorField:
    """``Xbar_i = x_j x^j d_i - 2 x_i x^j d_j``."""
    n = sig.n
    r2 = SymbolPolynomial.zero(n)
    for j in range(1, n + 1):
        r2 = r2 + _x_lower(sig, j) * SymbolPolynomial.x(n, j)
    xi_low = _x_lower(sig, i)
    comps = []
    for k in range(1, n + 1):
        c = xi_low * SymbolPolynomial.x(n, k) * (-2)
        if k == i:
            c = c + r2
        comps.append(c)
    return VectorField(tuple(comps))


def generator(sig: Signature, gid: str) -> VectorField:
    """Look up a generator by id: ``"X_i:3"``, ``"X_ij:1,2"``, ``"X0"``, ``"Xbar_i:2"``."""
    name, _, args = gid.partition(":")
    try:
        idx = [int(a) for a in args.split(",")] if args else []
    except ValueError:
        raise ArgumentError(f"bad generator id {gid!r}") from None
    for i in idx:
        _idx(sig.n, i)
    if name == "X_i" and len(idx) == 1:
        return _translation(sig, idx[0])
    if name == "X_ij" and len(idx) == 2 and idx[0] != idx[1]:
        return _rotation(sig, idx[0], idx[1])
    if name == "X0" and not idx:
        return _dilation(sig)
    if name == "Xbar_i" and len(idx) == 1:
        return _inversion(sig, idx[0])
    raise ArgumentError(f"bad generator id {gid!r}")


def _generator_ids(n: int) -> list[str]:
    ids = [f"X_i:{i}" for i in range(1, n + 1)]
    ids += [f"X_ij:{i},{j}" for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    ids.append("X0")
    ids += [f"Xbar_i:{i}" for i in range(1, n + 1)]
    return ids


def _dual_ids(sig: Signature) -> list[dict]:
    """Killing-dual basis as ``{generator id: coefficient}``."""
    n = sig.n
    duals = []
    for gid in _generator_ids(n):
        name, _, args = gid.partition(":")
        if name == "X_i":
            i = int(args)
            duals.append({f"Xbar_i:{i}": mpq(-sig.sign(i), 2)})
        elif name == "X_ij":
            i, j = (int(a) for a in args.split(","))
            duals.append({gid: mpq(sig.sign(i) * sig.sign(j))})
        elif name == "X0":
            duals.append({"X0": mpq(-1)})
        else:
            i = int(args)
            duals.append({f"X_i:{i}": mpq(-sig.sign(i), 2)})
    return duals


@dataclass(frozen=True)
class ConformalBasis:
    """Generators of o(p+1,q+1), their Killing duals and the Gram matrix."""

    sig: Signature
    ids: tuple
    generators: tuple
    dual_coefficients: tuple
    gram: tuple

    def __len__(self) -> int:
        return len(self.ids)

    @property
    def dual_generators(self) -> tuple:
        out = []
        for coeffs in self.dual_coefficients:
            v = None
            for gid, c in coeffs.items():
                term = self.generators[self.ids.index(gid)].scale(c)
                v = term if v is None else v + term
            out.append(v)
        return tuple(out)

    def pairs(self):
        """Yield ``(dual_coefficients, generator)`` for building Casimir sums."""
        return zip(self.dual_coefficients, self.generators)

    def by_id(self, gid: str) -> VectorField:
        return self.generators[self.ids.index(gid)]

    def expand(self, X: VectorField) -> dict | None:
        """Coordinates of ``X`` in the basis, or ``None`` if ``X`` is not in the span.

        Every generator is characterised by one monomial coefficient, so the
        coordinates are read off directly and then confirmed by recombination.
        """
        n = self.sig.n
        coords: dict = {}
        zeros = (0,) * n

        def coeff(comp: int, xexp) -> mpq:
            return X.components[comp].terms.get(tuple(xexp) + zeros + (0, 0), mpq(0))

        for i in range(1, n + 1):
            coords[f"X_i:{i}"] = coeff(i - 1, zeros)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                e = [0] * n
                e[i - 1] = 1
                coords[f"X_ij:{i},{j}"] = coeff(j - 1, e) * self.sig.sign(i)
        # x^1 d_1 appears only in X0 (X_ij has no diagonal part)
        e = [0] * n
        e[0] = 1
        coords["X0"] = coeff(0, e)
        for i in range(1, n + 1):
            # the (x^k)^2 d_i coefficient with k != i identifies Xbar_i
            k = 1 if i != 1 else 2
            e = [0] * n
            e[k - 1] = 2
            coords[f"Xbar_i:{i}"] = coeff(i - 1, e) * self.sig.sign(k)
        total = None
        for gid, c in coords.items():
            if c:
                term = self.by_id(gid).scale(c)
                total = term if total is None else total + term
        if total is None:
            return coords if X.is_zero() else None
        return coords if (X - total).is_zero() else None


def conformal_generators(sig: Signature) -> ConformalBasis:
    """The (n+1)(n+2)/2 generators with Killing duals."""
    if sig.n < 2:
        raise UnsupportedDimension("the conformal algebra is only used for n >= 2")
    ids = _generator_ids(sig.n)
    gens = tuple(generator(sig, g) for g in ids)
    return ConformalBasis(sig, tuple(ids), gens, tuple(_dual_ids(sig)), killing_form(sig))


# -- matrix realisation and Killing form ----------------------------------------


def _matrix(sig: Signature, gid: str) -> tuple[list, int]:
    """``(M, r)`` with the (n+2)x(n+2) generator matrix equal to ``sqrt(2)**r * M``."""
    n = sig.n
    size = n + 2
    M = [[mpq(0)] * size for _ in range(size)]
    name, _, args = gid.partition(":")
    idx = [int(a) for a in args.split(",")] if args else []
    g = sig.signs()
    if name == "X_i":
        i = idx[0] - 1
        M[i][n] = mpq(-1)
        M[n + 1][i] = mpq(g[i])
        return M, 1
    if name == "X_ij":
        i, j = idx[0] - 1, idx[1] - 1
        # e_j e_i^flat - e_i e_j^flat
        M[j][i] += g[i]
        M[i][j] -= g[j]
        return M, 0
    if name == "X0":
        M[n][n] = mpq(-1)
        M[n + 1][n + 1] = mpq(1)
        return M, 0
    i = idx[0] - 1
    M[i][n + 1] = mpq(1)
    M[n][i] = mpq(-g[i])
    return M, 1


def matrix_realization(sig: Signature) -> dict:
    return {gid: _matrix(sig, gid) for gid in _generator_ids(sig.n)}


def _matmul(A, B):
    size = len(A)
    return [[sum((A[r][k] * B[k][c] for k in range(size) if A[r][k] and B[k][c]), mpq(0))
             for c in range(size)] for r in range(size)]


def killing_form(sig: Signature) -> tuple:
    """Gram matrix of ``B(X, Y) = -1/2 Tr(XY)`` in the generator order."""
    mats = matrix_realization(sig)
    ids = _generator_ids(sig.n)
    gram = []
    for a in ids:
        Ma, ra = mats[a]
        row = []
        for b in ids:
            Mb, rb = mats[b]
            prod = _matmul(Ma, Mb)
            tr = sum((prod[k][k] for k in range(len(prod))), mpq(0))
            if tr and (ra + rb) % 2:
                raise ArithmeticError("irrational Killing pairing")
            row.append(-tr / 2 * 2 ** ((ra + rb) // 2))
        gram.append(tuple(row))
    return tuple(gram)
