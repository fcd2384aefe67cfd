"""Truncated Taylor jets at the origin and the quantized geodesic flow.

A conformally flat metric is given near the origin by ``g = F * eta`` with
``eta`` the flat metric of signature (p, q) and ``F(0) = 1``.  Geometry
(Christoffel symbols, curvature, the Laplace-Beltrami operator) is computed
from first principles on jets; the quantum Hamiltonian is obtained by
conjugating the flat quantization with powers of the Riemannian volume.

A jet of order ``r`` is exact modulo monomials of degree ``> r``; each
x-derivative costs one order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from . import diffop
from .errors import ArgumentError, DimensionError, JetOrderError
from .poly import Signature, SymbolPolynomial, Weights
from .quantizer import quantize
from .scalars import format_rational, to_rational

__all__ = [
    "TaylorJet",
    "MetricJet",
    "christoffel",
    "scalar_curvature",
    "curvature_at_origin",
    "laplace_beltrami",
    "quantum_hamiltonian",
    "GeodesicReport",
    "geodesic_flow_check",
    "yamabe_constant",
]


class TaylorJet:
    """A polynomial in ``x`` modulo degree ``order + 1``."""

    __slots__ = ("n", "order", "poly")

    def __init__(self, n: int, order: int, values=None):
        if not isinstance(order, int) or order < 0:
            raise ArgumentError("jet order must be a non-negative int")
        self.n = n
        self.order = order
        if isinstance(values, SymbolPolynomial):
            if not values.is_x_only() or not values.is_real() or values.hbar_degree() > 0:
                raise ArgumentError("jet coefficients must be real rationals in x only")
            poly = values
        else:
            terms = {}
            zeros = (0,) * n
            for e, v in (values or {}).items():
                e = tuple(e)
                if len(e) != n:
                    raise DimensionError(f"exponent {e} does not have length {n}")
                terms[e + zeros + (0, 0)] = to_rational(v)
            poly = SymbolPolynomial(n, terms)
        self.poly = poly.truncate_x(order)

    @classmethod
    def constant(cls, n: int, order: int, c=1) -> "TaylorJet":
        return cls(n, order, SymbolPolynomial.constant(n, c))

    @classmethod
    def variable(cls, n: int, order: int, i: int) -> "TaylorJet":
        return cls(n, order, SymbolPolynomial.x(n, i))

    def coefficients(self) -> dict:
        n = self.n
        return {k[:n]: c for k, c in self.poly.terms.items()}

    def value(self) -> mpq:
        """Value at the origin."""
        return self.poly.constant_term()

    def _other(self, other) -> "TaylorJet":
        if isinstance(other, TaylorJet):
            if other.n != self.n:
                raise DimensionError("jets on different R^n")
            return other
        return TaylorJet.constant(self.n, self.order, other)

    def __add__(self, other) -> "TaylorJet":
        other = self._other(other)
        return TaylorJet(self.n, min(self.order, other.order), self.poly + other.poly)

    __radd__ = __add__

    def __neg__(self) -> "TaylorJet":
        return TaylorJet(self.n, self.order, -self.poly)

    def __sub__(self, other) -> "TaylorJet":
        return self + (-self._other(other))

    def __rsub__(self, other) -> "TaylorJet":
        return self._other(other) - self

    def __mul__(self, other) -> "TaylorJet":
        if isinstance(other, TaylorJet):
            other = self._other(other)
            r = min(self.order, other.order)
            return TaylorJet(self.n, r, self.poly.truncate_x(r) * other.poly.truncate_x(r))
        return TaylorJet(self.n, self.order, self.poly * to_rational(other))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, TaylorJet):
            return NotImplemented
        return self.n == other.n and self.order == other.order and self.poly == other.poly

    __hash__ = None

    def _series(self, coeffs) -> "TaylorJet":
        """``sum_m coeffs[m] u^m`` where ``self = c + u``."""
        u = self - self.value()
        out = TaylorJet.constant(self.n, self.order, 0)
        power = TaylorJet.constant(self.n, self.order, 1)
        for m, c in enumerate(coeffs):
            if c:
                out = out + power * c
            power = power * u
            if power.poly.is_zero():
                break
        return out

    def inv(self) -> "TaylorJet":
        c = self.value()
        if not c:
            raise ArgumentError("a jet with zero constant term is not invertible")
        # 1/(c + u) = (1/c) sum (-u/c)^m
        return self._series([(-1) ** m / c ** (m + 1) for m in range(self.order + 1)])

    def pow(self, exponent) -> "TaylorJet":
        """``self ** exponent`` for rational exponents (constant term must be 1)."""
        a = to_rational(exponent)
        if a.denominator == 1 and a >= 0:
            out = TaylorJet.constant(self.n, self.order, 1)
            for _ in range(int(a)):
                out = out * self
            return out
        if self.value() != 1:
            raise ArgumentError("rational powers need a jet with constant term 1")
        coeffs = []
        c = mpq(1)
        for m in range(self.order + 1):
            coeffs.append(c)
            c = c * (a - m) / (m + 1)
        return self._series(coeffs)

    def __pow__(self, exponent) -> "TaylorJet":
        return self.pow(exponent)

    def diff(self, i: int) -> "TaylorJet":
        if self.order == 0:
            raise JetOrderError("cannot differentiate a jet of order 0")
        return TaylorJet(self.n, self.order - 1, self.poly.diff_x(i))

    def truncate(self, order: int) -> "TaylorJet":
        if order > self.order:
            raise JetOrderError(f"cannot raise jet order from {self.order} to {order}")
        return TaylorJet(self.n, order, self.poly)

    def __repr__(self) -> str:
        return f"TaylorJet(n={self.n}, r={self.order}, {self.poly})"


@dataclass(frozen=True)
class MetricJet:
    """The metric ``F * eta`` with ``F(0) = 1``."""

    conformal_factor: TaylorJet
    sig: Signature

    def __post_init__(self):
        if self.conformal_factor.n != self.sig.n:
            raise DimensionError("conformal factor and signature disagree on n")
        if self.conformal_factor.value() != 1:
            raise ArgumentError("the conformal factor must satisfy F(0) = 1")

    @property
    def n(self) -> int:
        return self.sig.n

    @property
    def order(self) -> int:
        return self.conformal_factor.order

    def metric(self) -> list:
        F = self.conformal_factor
        zero = F * 0
        return [[F * self.sig.sign(i) if i == j else zero for j in range(1, self.n + 1)]
                for i in range(1, self.n + 1)]

    def inverse(self) -> list:
        Finv = self.conformal_factor.inv()
        zero = Finv * 0
        return [[Finv * self.sig.sign(i) if i == j else zero for j in range(1, self.n + 1)]
                for i in range(1, self.n + 1)]

    def volume_power(self, weight) -> TaylorJet:
        """``|Vol_g|**weight = F**(n weight / 2)`` in the trivialisation by ``|dx|``."""
        return self.conformal_factor.pow(to_rational(weight) * self.n / 2)


def christoffel(m: MetricJet) -> list:
    """``Gamma[k][i][j] = 1/2 g^{kl}(d_i g_jl + d_j g_il - d_l g_ij)``, jets of order ``r - 1``."""
    if m.order < 1:
        raise JetOrderError("Christoffel symbols need a jet of order >= 1")
    n = m.n
    g, ginv = m.metric(), m.inverse()
    dg = [[[g[a][b].diff(c + 1) for c in range(n)] for b in range(n)] for a in range(n)]
    out = []
    for k in range(n):
        rows = []
        for i in range(n):
            cols = []
            for j in range(n):
                acc = TaylorJet.constant(n, m.order - 1, 0)
                for l in range(n):
                    if ginv[k][l].poly.is_zero():
                        continue
                    s = dg[j][l][i] + dg[i][l][j] - dg[i][j][l]
                    if not s.poly.is_zero():
                        acc = acc + ginv[k][l] * s
                cols.append(acc * mpq(1, 2))
            rows.append(cols)
        out.append(rows)
    return out


def scalar_curvature(m: MetricJet) -> TaylorJet:
    """Scalar curvature ``g^{bd} R^a_{bad}`` as a jet of order ``r - 2``.

    ``R^a_{bcd} = d_c Gamma^a_{db} - d_d Gamma^a_{cb} + Gamma^a_{ce} Gamma^e_{db}
    - Gamma^a_{de} Gamma^e_{cb}``; round spheres have positive curvature.
    """
    if m.order < 2:
        raise JetOrderError("scalar curvature needs a jet of order >= 2")
    n = m.n
    G = christoffel(m)
    ginv = m.inverse()
    r = m.order - 2
    ricci = [[TaylorJet.constant(n, r, 0) for _ in range(n)] for _ in range(n)]
    for b in range(n):
        for d in range(n):
            acc = TaylorJet.constant(n, r, 0)
            for a in range(n):
                acc = acc + G[a][d][b].diff(a + 1) - G[a][a][b].diff(d + 1)
                for e in range(n):
                    acc = acc + G[a][a][e] * G[e][d][b] - G[a][d][e] * G[e][a][b]
            ricci[b][d] = acc
    out = TaylorJet.constant(n, r, 0)
    for b in range(n):
        for d in range(n):
            if not ginv[b][d].poly.is_zero():
                out = out + ginv[b][d] * ricci[b][d]
    return out


def curvature_at_origin(m: MetricJet) -> mpq:
    return scalar_curvature(m).value()


def laplace_beltrami(m: MetricJet) -> SymbolPolynomial:
    """Operator symbol of ``g^{ij}(d_i d_j - Gamma^k_ij d_k)``, valid through x-degree ``r - 1``."""
    n = m.n
    G = christoffel(m)
    ginv = m.inverse()
    xi = lambda i: SymbolPolynomial.xi(n, i + 1)
    out = SymbolPolynomial.zero(n)
    for i in range(n):
        for j in range(n):
            if ginv[i][j].poly.is_zero():
                continue
            out = out + ginv[i][j].poly * xi(i) * xi(j)
            for k in range(n):
                c = (ginv[i][j] * G[k][i][j]).poly
                if not c.is_zero():
                    out = out - c * xi(k)
    return out.truncate_x(m.order - 1)


def yamabe_constant(n: int) -> mpq:
    """``n^2 / (4 (n-1)(n+2))``."""
    return mpq(n * n, 4 * (n - 1) * (n + 2))


def quantum_hamiltonian(P: SymbolPolynomial, m: MetricJet, w: Weights) -> SymbolPolynomial:
    """``|Vol_g|^{-mu} o quantize(P) o |Vol_g|^{lambda}`` through x-degree ``r - deg P``.

    ``P`` carries jet coefficients: its x-dependence is read modulo degree ``r + 1``.
    """
    if w.lam + w.mu != 1:
        raise ArgumentError("the Schroedinger picture needs lambda + mu = 1")
    if P.n != m.n:
        raise DimensionError("symbol and metric disagree on n")
    r = m.order
    k = max(P.xi_degree(), 0)
    if k > r:
        raise JetOrderError(f"a jet of order {r} cannot carry a symbol of xi-degree {k}")
    A = quantize(P.truncate_x(r), w, m.sig)
    right = m.volume_power(w.lam).poly
    left = m.volume_power(-w.mu).poly
    return diffop.compose(left, diffop.compose(A, right)).truncate_x(r - k)


def _hamiltonian(m: MetricJet) -> SymbolPolynomial:
    """``H = g^{ij} xi_i xi_j``."""
    ginv = m.inverse()
    out = SymbolPolynomial.zero(m.n)
    for i in range(m.n):
        out = out + ginv[i][i].poly * SymbolPolynomial.xi(m.n, i + 1) ** 2
    return out


@dataclass
class GeodesicReport:
    passed: bool
    n: int
    order: int
    compared_degree: int
    curvature_at_origin: mpq
    differences: list = field(default_factory=list)
    quantum: SymbolPolynomial | None = None
    expected: SymbolPolynomial | None = None

    def as_dict(self) -> dict:
        from .codec import encode_polynomial

        sig = Signature(self.n, 0)
        return {
            "passed": self.passed,
            "n": self.n,
            "r": self.order,
            "compared_degree": self.compared_degree,
            "scalar_curvature_at_origin": format_rational(self.curvature_at_origin),
            "differences": self.differences,
            "quantum_hamiltonian": encode_polynomial(self.quantum, sig, "operator")
            if self.quantum is not None else None,
        }


def geodesic_flow_check(m: MetricJet, sig: Signature | None = None) -> GeodesicReport:
    """Compare the quantized ``g^{ij} xi_i xi_j`` with ``-hbar^2 (Delta_g - c_n R_g)``.

    Both sides are compared coefficient by coefficient through x-degree
    ``r - 2``, the range on which both are determined by the jet.
    """
    sig = sig or m.sig
    if sig != m.sig:
        raise ArgumentError("signature differs from the metric's")
    if m.n < 2:
        raise ArgumentError("the geodesic flow check needs n >= 2")
    if m.order < 2:
        raise JetOrderError("the geodesic flow check needs a jet of order >= 2")
    n, r = m.n, m.order
    half = Weights(mpq(1, 2), mpq(1, 2))
    quantum = quantum_hamiltonian(_hamiltonian(m), m, half)
    R = scalar_curvature(m)
    minus_hbar2 = SymbolPolynomial.monomial(n, coeff=-1, hpow=2)
    expected = (laplace_beltrami(m) - R.poly * yamabe_constant(n)) * minus_hbar2
    degree = r - 2
    lhs, rhs = quantum.truncate_x(degree), expected.truncate_x(degree)
    diffs = []
    if lhs != rhs:
        a, b = lhs.coefficients(), rhs.coefficients()
        for mono in sorted(set(a) | set(b)):
            if a.get(mono) != b.get(mono):
                diffs.append({"x": list(mono[0]), "xi": list(mono[1]),
                              "quantum": [str(c) for c in a.get(mono, [])],
                              "expected": [str(c) for c in b.get(mono, [])]})
    return GeodesicReport(not diffs, n, r, degree, R.value(), diffs, lhs, rhs)
