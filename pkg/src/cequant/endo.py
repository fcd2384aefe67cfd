"""Polynomial differential operators acting on symbols.

An :class:`EndoOperator` is an element of the Weyl algebra generated by
``x^i, xi_i, d/dx^i, d/dxi_i``, kept in normal order (multiplications left of
derivatives).  Keys are ``(x[n], xi[n], dx[n], dxi[n], h, j)``.  Two operators
are equal as endomorphisms of the polynomial space exactly when their normal
forms are equal, so every operator identity here is decided symbolically.
"""

from __future__ import annotations

from gmpy2 import mpq

from .errors import ArgumentError, DimensionError
from .poly import SymbolPolynomial, _add_into, _idx, weyl_apply, weyl_prepare, weyl_product
from .scalars import to_rational

__all__ = ["EndoOperator", "endo_apply", "endo_compose", "commutator", "anticommutator"]


class EndoOperator:
    __slots__ = ("n", "_terms", "_prepared")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        self._terms = terms if terms is not None else {}
        self._prepared = None

    # -- construction -------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "EndoOperator":
        return cls.scalar(n, 1)

    @classmethod
    def scalar(cls, n: int, c) -> "EndoOperator":
        c = to_rational(c)
        if not c:
            return cls(n)
        return cls(n, {(0,) * (4 * n + 2): c})

    @classmethod
    def multiplication(cls, P: SymbolPolynomial) -> "EndoOperator":
        """Multiplication by the symbol ``P``."""
        n = P.n
        zeros = (0,) * (2 * n)
        return cls(n, {k[:2 * n] + zeros + k[2 * n:]: c for k, c in P.terms.items()})

    @classmethod
    def d_x(cls, n: int, i: int) -> "EndoOperator":
        key = [0] * (4 * n + 2)
        key[2 * n + _idx(n, i)] = 1
        return cls(n, {tuple(key): mpq(1)})

    @classmethod
    def d_xi(cls, n: int, i: int) -> "EndoOperator":
        key = [0] * (4 * n + 2)
        key[3 * n + _idx(n, i)] = 1
        return cls(n, {tuple(key): mpq(1)})

    # -- algebra ------------------------------------------------------------

    @property
    def terms(self) -> dict:
        return self._terms

    def _coerce(self, other) -> "EndoOperator":
        if isinstance(other, EndoOperator):
            if other.n != self.n:
                raise DimensionError(f"dimension mismatch: n={self.n} vs n={other.n}")
            return other
        if isinstance(other, SymbolPolynomial):
            return EndoOperator.multiplication(other)
        return EndoOperator.scalar(self.n, other)

    def __add__(self, other) -> "EndoOperator":
        other = self._coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            _add_into(out, k, c)
        return EndoOperator(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> "EndoOperator":
        return EndoOperator(self.n, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "EndoOperator":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "EndoOperator":
        return self._coerce(other) - self

    def __mul__(self, other) -> "EndoOperator":
        """Composition ``self o other`` (or scaling by a rational)."""
        if isinstance(other, (EndoOperator, SymbolPolynomial)):
            other = self._coerce(other)
            return EndoOperator(self.n, weyl_product(self._terms, other._terms, 2 * self.n))
        c = to_rational(other)
        if not c:
            return EndoOperator(self.n)
        return EndoOperator(self.n, {k: v * c for k, v in self._terms.items()})

    def __rmul__(self, other) -> "EndoOperator":
        if isinstance(other, SymbolPolynomial):
            return EndoOperator.multiplication(other) * self
        return self * other

    def __pow__(self, e: int) -> "EndoOperator":
        if not isinstance(e, int) or e < 0:
            raise ArgumentError("exponent must be a non-negative int")
        out = EndoOperator.identity(self.n)
        for _ in range(e):
            out = out * self
        return out

    def __call__(self, P: SymbolPolynomial) -> SymbolPolynomial:
        return endo_apply(self, P)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EndoOperator):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def xi_order(self) -> int:
        """Highest total order in ``d/dxi``."""
        n = self.n
        return max((sum(k[3 * n:4 * n]) for k in self._terms), default=-1)

    def __repr__(self) -> str:
        return f"EndoOperator(n={self.n}, {self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        n = self.n
        names = ([f"x{i + 1}" for i in range(n)] + [f"xi{i + 1}" for i in range(n)]
                 + [f"dx{i + 1}" for i in range(n)] + [f"dxi{i + 1}" for i in range(n)])
        pieces = []
        for k in sorted(self._terms):
            fs = [nm + (f"^{e}" if e > 1 else "") for nm, e in zip(names, k[:4 * n]) if e]
            if k[4 * n + 1]:
                fs.insert(0, "i")
            if k[4 * n]:
                fs.insert(0, "hbar" + (f"^{k[4 * n]}" if k[4 * n] > 1 else ""))
            pieces.append(f"{self._terms[k]}" + ("*" + "*".join(fs) if fs else ""))
        return " + ".join(pieces)


def endo_apply(O: EndoOperator, P: SymbolPolynomial) -> SymbolPolynomial:
    """Apply ``O`` to the symbol ``P``."""
    if O.n != P.n:
        raise DimensionError(f"dimension mismatch: n={O.n} vs n={P.n}")
    if O._prepared is None:
        # operators are never mutated after construction, so the cache stays valid
        O._prepared = weyl_prepare(O.terms, 2 * P.n)
    return SymbolPolynomial(P.n, weyl_apply(O.terms, P.terms, 2 * P.n, O._prepared), _trusted=True)


def endo_compose(A: EndoOperator, B: EndoOperator) -> EndoOperator:
    return A * B


def commutator(A: EndoOperator, B: EndoOperator) -> EndoOperator:
    return A * B - B * A


def anticommutator(A: EndoOperator, B: EndoOperator) -> EndoOperator:
    return A * B + B * A
