"""Exact multinomials on T*R^n.

A :class:`SymbolPolynomial` is a polynomial in ``x^1..x^n`` and
``xi_1..xi_n`` with Gaussian-rational coefficients and a formal ``hbar``.
Terms are stored in a dict keyed by a flat exponent tuple::

    (a_1, ..., a_n, b_1, ..., b_n, h, j)

meaning ``c * x^a * xi^b * hbar^h * i^j`` with ``j`` in ``{0, 1}`` and ``c`` a
nonzero ``mpq``.  Keeping the imaginary unit in the key lets every kernel work
over plain rationals; ``i*i`` folds into a sign flip.

The same key layout, read as ``(variables, derivatives, h, j)``, is the normal
form of a polynomial differential operator (Weyl algebra element).  A symbol is
thereby also the sigma-symbol of a differential operator on R^n, with ``xi``
standing for ``d/dx``, and :func:`weyl_product` composes either kind.

All public indices are 1-based, matching the coordinate names ``x^1..x^n``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, perm
from operator import add

from gmpy2 import mpq

from .errors import ArgumentError, DimensionError
from .scalars import ScaledCoefficient, format_rational, to_rational

__all__ = [
    "Signature",
    "Weights",
    "SymbolPolynomial",
    "OperatorSymbol",
    "weyl_product",
    "weyl_apply",
    "weyl_prepare",
    "random_symbol",
]

_ZERO = mpq(0)
_ONE = mpq(1)


@dataclass(frozen=True)
class Signature:
    """Flat metric ``diag(+1 * p, -1 * q)`` on R^n, ``n = p + q``."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0 or self.p + self.q < 1:
            raise ArgumentError(f"invalid signature ({self.p},{self.q})")

    @property
    def n(self) -> int:
        return self.p + self.q

    def sign(self, index: int) -> int:
        """``g_ii`` for a 1-based index (equal to ``g^ii``)."""
        if not 1 <= index <= self.n:
            raise ArgumentError(f"index {index} out of range 1..{self.n}")
        return 1 if index <= self.p else -1

    def signs(self) -> tuple[int, ...]:
        return tuple(1 if i < self.p else -1 for i in range(self.n))

    @classmethod
    def euclidean(cls, n: int) -> "Signature":
        return cls(n, 0)


@dataclass(frozen=True)
class Weights:
    """Density weights: operators act from lambda- to mu-densities."""

    lam: mpq
    mu: mpq

    def __post_init__(self):
        object.__setattr__(self, "lam", to_rational(self.lam))
        object.__setattr__(self, "mu", to_rational(self.mu))

    @property
    def delta(self) -> mpq:
        return self.mu - self.lam

    @classmethod
    def from_delta(cls, lam, delta) -> "Weights":
        lam = to_rational(lam)
        return cls(lam, lam + to_rational(delta))

    @classmethod
    def symmetric(cls, delta) -> "Weights":
        """The self-adjoint pair ``((1-delta)/2, (1+delta)/2)``."""
        delta = to_rational(delta)
        return cls((1 - delta) / 2, (1 + delta) / 2)

    def __str__(self) -> str:
        return f"(lambda={format_rational(self.lam)}, mu={format_rational(self.mu)})"


def _add_into(out: dict, key: tuple, c) -> None:
    v = out.get(key)
    if v is None:
        out[key] = c
    else:
        v = v + c
        if v:
            out[key] = v
        else:
            del out[key]


def weyl_product(a: dict, b: dict, m: int) -> dict:
    """Normal-ordered product of two Weyl-algebra elements on ``m`` variable pairs.

    Keys are ``(v_1..v_m, d_1..d_m, h, j)`` with derivatives to the right.
    Uses ``d^a x^b = sum_g C(a,g) (b!/(b-g)!) x^(b-g) d^(a-g)`` per variable.
    """
    out: dict = {}
    hm, jm = 2 * m, 2 * m + 1
    for ka, ca in a.items():
        dpos = [i for i in range(m) if ka[m + i]]
        for kb, cb in b.items():
            c = ca * cb
            j = ka[jm] + kb[jm]
            if j == 2:
                c = -c
                j = 0
            h = ka[hm] + kb[hm]
            active = [i for i in dpos if kb[i]]
            if not active:
                key = tuple(ka[i] + kb[i] for i in range(hm)) + (h, j)
                _add_into(out, key, c)
                continue
            ranges = [range(min(ka[m + i], kb[i]) + 1) for i in active]
            for gam in itertools.product(*ranges):
                key = [ka[i] + kb[i] for i in range(hm)]
                w = 1
                for i, g in zip(active, gam):
                    if g:
                        w *= comb(ka[m + i], g) * perm(kb[i], g)
                        key[i] -= g
                        key[m + i] -= g
                key.append(h)
                key.append(j)
                _add_into(out, tuple(key), c * w)
    return out


def weyl_prepare(op: dict, m: int) -> list:
    """Per-term ``(needed derivatives, key shift, coefficient)`` for :func:`weyl_apply`."""
    prepared = []
    for ka, ca in op.items():
        need = tuple((i, ka[m + i]) for i in range(m) if ka[m + i])
        shift = tuple(ka[i] - ka[m + i] for i in range(m)) + (ka[2 * m], ka[2 * m + 1])
        prepared.append((need, shift, ca))
    return prepared


def weyl_apply(op: dict, poly: dict, m: int, prepared: list | None = None) -> dict:
    """Apply a normal-ordered operator on ``m`` variables to a polynomial in them.

    ``op`` keys are ``(v_1..v_m, d_1..d_m, h, j)``; ``poly`` keys ``(v_1..v_m, h, j)``.
    ``prepared`` may carry a cached :func:`weyl_prepare` of ``op``.
    """
    if prepared is None:
        prepared = weyl_prepare(op, m)
    out: dict = {}
    for kb, cb in poly.items():
        for need, shift, ca in prepared:
            w = 1
            for i, e in need:
                b = kb[i]
                if b < e:
                    break
                w *= perm(b, e)
            else:
                key = tuple(map(add, kb, shift))
                c = ca * cb * w
                if key[-1] == 2:
                    key = key[:-1] + (0,)
                    c = -c
                _add_into(out, key, c)
    return out


class SymbolPolynomial:
    """Immutable exact polynomial in ``x``, ``xi``, ``hbar`` over Q(i)."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: dict | None = None, *, _trusted: bool = False):
        if n < 1:
            raise ArgumentError("n must be positive")
        self.n = n
        self._hash = None
        if terms is None:
            self._terms = {}
        elif _trusted:
            self._terms = terms
        else:
            clean = {}
            width = 2 * n + 2
            for key, c in terms.items():
                key = tuple(int(e) for e in key)
                if len(key) != width or min(key) < 0 or key[-1] > 1:
                    raise ArgumentError(f"bad term key {key} for n={n}")
                c = to_rational(c)
                if c:
                    _add_into(clean, key, c)
            self._terms = clean

    # -- construction -------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "SymbolPolynomial":
        return cls(n)

    @classmethod
    def constant(cls, n: int, c=1) -> "SymbolPolynomial":
        return cls.monomial(n, coeff=c)

    @classmethod
    def monomial(cls, n: int, x=None, xi=None, coeff=1, hpow: int = 0,
                 imag: bool = False) -> "SymbolPolynomial":
        x = tuple(x) if x is not None else (0,) * n
        xi = tuple(xi) if xi is not None else (0,) * n
        if len(x) != n or len(xi) != n:
            raise DimensionError(f"exponent vectors must have length {n}")
        if isinstance(coeff, ScaledCoefficient):
            terms = {}
            if coeff.re:
                terms[x + xi + (hpow + coeff.hpow, 0)] = coeff.re
            if coeff.im:
                terms[x + xi + (hpow + coeff.hpow, 1)] = coeff.im
            return cls(n, terms)
        return cls(n, {x + xi + (hpow, int(imag)): coeff})

    @classmethod
    def x(cls, n: int, i: int) -> "SymbolPolynomial":
        """The coordinate ``x^i``."""
        e = [0] * n
        e[_idx(n, i)] = 1
        return cls.monomial(n, x=e)

    @classmethod
    def xi(cls, n: int, i: int) -> "SymbolPolynomial":
        """The fibre coordinate ``xi_i``."""
        e = [0] * n
        e[_idx(n, i)] = 1
        return cls.monomial(n, xi=e)

    @classmethod
    def hbar(cls, n: int) -> "SymbolPolynomial":
        return cls.monomial(n, hpow=1)

    @classmethod
    def imag_unit(cls, n: int) -> "SymbolPolynomial":
        return cls.monomial(n, imag=True)

    @classmethod
    def from_coefficients(cls, n: int, coeffs: dict) -> "SymbolPolynomial":
        """Build from ``{(x_exps, xi_exps): [ScaledCoefficient, ...]}``."""
        terms: dict = {}
        for (xe, xie), clist in coeffs.items():
            base = tuple(xe) + tuple(xie)
            if len(base) != 2 * n:
                raise DimensionError(f"exponent vectors must have length {n}")
            for sc in clist:
                if sc.re:
                    _add_into(terms, base + (sc.hpow, 0), sc.re)
                if sc.im:
                    _add_into(terms, base + (sc.hpow, 1), sc.im)
        return cls(n, terms)

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict:
        """Read-only view of the raw term map (do not mutate)."""
        return self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, SymbolPolynomial):
            return self.n == other.n and self._terms == other._terms
        if _is_scalar(other):
            return self == SymbolPolynomial.constant(self.n, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def coefficients(self) -> dict:
        """``{(x_exps, xi_exps): [ScaledCoefficient, ...]}`` sorted by hbar power."""
        n = self.n
        grouped: dict = {}
        for key, c in self._terms.items():
            mono = (key[:n], key[n:2 * n])
            slot = grouped.setdefault(mono, {})
            re, im = slot.get(key[2 * n], (_ZERO, _ZERO))
            if key[2 * n + 1]:
                im = c
            else:
                re = c
            slot[key[2 * n]] = (re, im)
        return {mono: [ScaledCoefficient(re, im, h) for h, (re, im) in sorted(slot.items())]
                for mono, slot in sorted(grouped.items())}

    def xi_degree(self) -> int:
        """Top total degree in ``xi`` (``-1`` for the zero polynomial)."""
        n = self.n
        return max((sum(k[n:2 * n]) for k in self._terms), default=-1)

    def x_degree(self) -> int:
        n = self.n
        return max((sum(k[:n]) for k in self._terms), default=-1)

    def hbar_degree(self) -> int:
        n = self.n
        return max((k[2 * n] for k in self._terms), default=-1)

    def is_real(self) -> bool:
        j = 2 * self.n + 1
        return all(k[j] == 0 for k in self._terms)

    def is_x_only(self) -> bool:
        n = self.n
        return all(not any(k[n:2 * n]) for k in self._terms)

    def constant_term(self) -> mpq:
        """Coefficient of the real, hbar-free monomial 1."""
        return self._terms.get((0,) * (2 * self.n + 2), _ZERO)

    # -- ring operations ----------------------------------------------------

    def _check(self, other: "SymbolPolynomial") -> None:
        if self.n != other.n:
            raise DimensionError(f"dimension mismatch: n={self.n} vs n={other.n}")

    def _coerce(self, other) -> "SymbolPolynomial":
        if isinstance(other, SymbolPolynomial):
            self._check(other)
            return other
        if isinstance(other, ScaledCoefficient):
            return SymbolPolynomial.monomial(self.n, coeff=other)
        return SymbolPolynomial.constant(self.n, to_rational(other))

    def __add__(self, other) -> "SymbolPolynomial":
        other = self._coerce(other)
        if len(other._terms) > len(self._terms):
            big, small = other, self
        else:
            big, small = self, other
        out = dict(big._terms)
        for k, c in small._terms.items():
            _add_into(out, k, c)
        return SymbolPolynomial(self.n, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "SymbolPolynomial":
        return SymbolPolynomial(self.n, {k: -c for k, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other) -> "SymbolPolynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "SymbolPolynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "SymbolPolynomial":
        if not isinstance(other, (SymbolPolynomial, ScaledCoefficient)):
            return self.scale(other)
        other = self._coerce(other)
        n = self.n
        width = 2 * n + 1
        out: dict = {}
        for ka, ca in self._terms.items():
            for kb, cb in other._terms.items():
                c = ca * cb
                j = ka[width] + kb[width]
                if j == 2:
                    c = -c
                    j = 0
                key = tuple(ka[i] + kb[i] for i in range(width)) + (j,)
                _add_into(out, key, c)
        return SymbolPolynomial(n, out, _trusted=True)

    __rmul__ = __mul__

    def scale(self, c) -> "SymbolPolynomial":
        """Multiply by a rational scalar."""
        c = to_rational(c)
        if not c:
            return SymbolPolynomial(self.n)
        return SymbolPolynomial(self.n, {k: v * c for k, v in self._terms.items()}, _trusted=True)

    def __truediv__(self, c) -> "SymbolPolynomial":
        c = to_rational(c)
        if not c:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self.scale(1 / c)

    def __pow__(self, e: int) -> "SymbolPolynomial":
        if not isinstance(e, int) or e < 0:
            raise ArgumentError("exponent must be a non-negative int")
        result = SymbolPolynomial.constant(self.n, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- calculus -----------------------------------------------------------

    def diff(self, kind: str, index: int) -> "SymbolPolynomial":
        """Formal partial derivative in ``x^index`` (kind ``"x"``) or ``xi_index`` (``"xi"``)."""
        n = self.n
        if kind not in ("x", "xi"):
            raise ArgumentError(f"kind must be 'x' or 'xi', got {kind!r}")
        pos = _idx(n, index) + (0 if kind == "x" else n)
        out = {}
        for k, c in self._terms.items():
            e = k[pos]
            if e:
                nk = list(k)
                nk[pos] = e - 1
                out[tuple(nk)] = c * e
        return SymbolPolynomial(n, out, _trusted=True)

    def diff_x(self, index: int) -> "SymbolPolynomial":
        return self.diff("x", index)

    def diff_xi(self, index: int) -> "SymbolPolynomial":
        return self.diff("xi", index)

    # -- gradings -----------------------------------------------------------

    def xi_degree_split(self) -> list[tuple[int, "SymbolPolynomial"]]:
        """``[(k, part_k), ...]`` with ``part_k`` xi-homogeneous of degree k, ascending."""
        n = self.n
        parts: dict[int, dict] = {}
        for k, c in self._terms.items():
            parts.setdefault(sum(k[n:2 * n]), {})[k] = c
        return [(d, SymbolPolynomial(n, parts[d], _trusted=True)) for d in sorted(parts)]

    def xi_homogeneous(self, degree: int) -> "SymbolPolynomial":
        n = self.n
        return self._filter(lambda k: sum(k[n:2 * n]) == degree)

    def hbar_part(self, power: int) -> "SymbolPolynomial":
        """Coefficient of ``hbar**power`` (returned with hbar power 0)."""
        n = self.n
        out = {}
        for k, c in self._terms.items():
            if k[2 * n] == power:
                out[k[:2 * n] + (0, k[2 * n + 1])] = c
        return SymbolPolynomial(n, out, _trusted=True)

    def truncate_hbar(self, order: int) -> "SymbolPolynomial":
        """Drop every term with hbar power above ``order``."""
        h = 2 * self.n
        return self._filter(lambda k: k[h] <= order)

    def truncate_x(self, degree: int) -> "SymbolPolynomial":
        """Drop every term with total x-degree above ``degree``."""
        n = self.n
        return self._filter(lambda k: sum(k[:n]) <= degree)

    def _filter(self, pred) -> "SymbolPolynomial":
        return SymbolPolynomial(self.n, {k: c for k, c in self._terms.items() if pred(k)},
                                _trusted=True)

    def real_part(self) -> "SymbolPolynomial":
        j = 2 * self.n + 1
        return self._filter(lambda k: k[j] == 0)

    def conjugate(self) -> "SymbolPolynomial":
        """Complex conjugation ``i -> -i``; hbar is real."""
        j = 2 * self.n + 1
        return SymbolPolynomial(self.n, {k: (-c if k[j] else c) for k, c in self._terms.items()},
                                _trusted=True)

    def times_i_hbar(self, power: int = 1) -> "SymbolPolynomial":
        """Multiply by ``(i*hbar)**power``."""
        n = self.n
        out = {}
        for k, c in self._terms.items():
            j = k[2 * n + 1] + power
            sign = -1 if (j // 2) % 2 else 1
            out[k[:2 * n] + (k[2 * n] + power, j % 2)] = c * sign
        return SymbolPolynomial(n, out, _trusted=True)

    # -- metric -------------------------------------------------------------

    def raise_index(self, sig: Signature, kind: str, index: int) -> "SymbolPolynomial":
        """Trade the variable of the given kind and index for its metric dual.

        ``xi_i`` becomes ``xi^i = g^{ii} xi_i`` (for ``kind="xi"``) and
        ``x^i`` becomes ``x_i = g_{ii} x^i`` (for ``kind="x"``).  For the
        diagonal +-1 metric this is a sign per power of the variable, so the
        map is an involution.
        """
        if sig.n != self.n:
            raise DimensionError("signature and polynomial disagree on n")
        if kind not in ("x", "xi"):
            raise ArgumentError(f"kind must be 'x' or 'xi', got {kind!r}")
        if sig.sign(index) == 1:
            return self
        pos = _idx(self.n, index) + (0 if kind == "x" else self.n)
        return SymbolPolynomial(self.n, {k: (-c if k[pos] % 2 else c) for k, c in self._terms.items()},
                                _trusted=True)

    # -- display ------------------------------------------------------------

    def __repr__(self) -> str:
        return f"SymbolPolynomial(n={self.n}, {self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        n = self.n
        pieces = []
        for k in sorted(self._terms, key=lambda k: (sum(k[n:2 * n]), k[2 * n], k)):
            c = self._terms[k]
            factors = []
            for i in range(n):
                if k[i]:
                    factors.append(f"x{i + 1}" + (f"^{k[i]}" if k[i] > 1 else ""))
            for i in range(n):
                if k[n + i]:
                    factors.append(f"xi{i + 1}" + (f"^{k[n + i]}" if k[n + i] > 1 else ""))
            if k[2 * n + 1]:
                factors.append("i")
            if k[2 * n]:
                factors.append("hbar" + (f"^{k[2 * n]}" if k[2 * n] > 1 else ""))
            if not factors:
                pieces.append(format_rational(c))
            elif c == 1:
                pieces.append("*".join(factors))
            elif c == -1:
                pieces.append("-" + "*".join(factors))
            else:
                pieces.append(format_rational(c) + "*" + "*".join(factors))
        return " + ".join(pieces).replace("+ -", "- ")


# Differential operators are stored as their sigma-symbols.
OperatorSymbol = SymbolPolynomial


def _idx(n: int, i: int) -> int:
    if not isinstance(i, int) or not 1 <= i <= n:
        raise ArgumentError(f"index {i!r} out of range 1..{n}")
    return i - 1


def _is_scalar(v) -> bool:
    return isinstance(v, (int, Fraction)) or type(v) is type(_ZERO)


def _monomials(n: int, degree: int):
    """All exponent vectors of length n and total degree ``degree``."""
    if n == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in _monomials(n - 1, degree - first):
            yield (first,) + rest


def monomials_up_to(n: int, degree: int) -> list[tuple[int, ...]]:
    return [m for d in range(degree + 1) for m in _monomials(n, d)]


def monomials_of_degree(n: int, degree: int) -> list[tuple[int, ...]]:
    return list(_monomials(n, degree))


def random_symbol(n: int, xi_degree: int, x_degree: int, rng: random.Random,
                  nterms: int = 4, real: bool = True, max_num: int = 5) -> SymbolPolynomial:
    """A sparse random real symbol with small rational coefficients.

    The top xi-degree is always attained so that tests exercise the deepest
    recurrence level.
    """
    terms: dict = {}
    for t in range(nterms):
        d = xi_degree if t == 0 else rng.randint(0, xi_degree)
        xi = rng.choice(monomials_of_degree(n, d))
        x = rng.choice(monomials_up_to(n, x_degree))
        num = rng.randint(1, max_num) * rng.choice((-1, 1))
        den = rng.randint(1, 3)
        j = 0 if real else rng.randint(0, 1)
        _add_into(terms, tuple(x) + tuple(xi) + (0, j), mpq(num, den))
    return SymbolPolynomial(n, terms, _trusted=True)
