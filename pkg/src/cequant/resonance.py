"""Resonant shifts: where two Casimir eigenvalues collide, and whether it matters.

The symbol Casimir acts by ``gamma(k, s)`` on ``(k, s)`` pieces and the
difference ``gamma(k, s) - gamma(l, t)`` is affine in ``delta`` with slope
``2n(k - l)``, so every pair ``k > l`` has exactly one resonant shift.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from .codec import encode_polynomial
from .errors import ArgumentError, CriticalResonance, UnsupportedDimension
from .harmonic import HarmonicComponent, project
from .poly import Signature, SymbolPolynomial, Weights, monomials_of_degree, monomials_up_to
from .quantizer import solve_eigenvector
from .scalars import format_rational

__all__ = ["ResonanceEntry", "ProbeEntry", "delta_value", "enumerate_sigma", "sigma_values",
           "probe_critical"]

OK = "OK"
CONSISTENT = "ResonantConsistent"
CRITICAL = "Critical"


def _check(k: int, l: int, s: int, t: int) -> None:
    if not all(isinstance(v, int) for v in (k, l, s, t)):
        raise ArgumentError("resonance indices must be integers")
    if not (k > l >= 0 and 0 <= 2 * s <= k and 0 <= 2 * t <= l):
        raise ArgumentError(f"need k > l >= 0, 0 <= 2s <= k, 0 <= 2t <= l; got {(k, l, s, t)}")


def delta_value(k: int, l: int, s: int, t: int, sig: Signature) -> mpq:
    """The unique shift at which ``gamma(k, s) = gamma(l, t)``."""
    _check(k, l, s, t)
    n = sig.n
    num = ((k - l + t - s) * (k + l - 2 * (s + t) + n - 1) + (s - t) * (k + l + 1)
           + 2 * (k * t - l * s))
    return mpq(num, n * (k - l))


@dataclass(frozen=True)
class ResonanceEntry:
    k: int
    l: int
    s: int
    t: int
    delta: mpq
    in_sigma0: bool

    def as_dict(self) -> dict:
        return {"k": self.k, "l": self.l, "s": self.s, "t": self.t,
                "delta": format_rational(self.delta), "in_sigma0": self.in_sigma0}


def enumerate_sigma(sig: Signature, k_max: int) -> list[ResonanceEntry]:
    """Every ``(k, l, s, t)`` with ``k <= k_max``, sorted by shift then indices."""
    if not isinstance(k_max, int) or k_max < 1:
        raise ArgumentError("k_max must be a positive int")
    out = []
    for k in range(1, k_max + 1):
        for l in range(k):
            for s in range(k // 2 + 1):
                for t in range(l // 2 + 1):
                    d = delta_value(k, l, s, t, sig)
                    out.append(ResonanceEntry(k, l, s, t, d, 0 <= s - t <= k - l))
    out.sort(key=lambda e: (e.delta, e.k, e.l, e.s, e.t))
    return out


def sigma_values(sig: Signature, k_max: int, only_sigma0: bool = False) -> list[mpq]:
    """Distinct resonant shifts, ascending."""
    return sorted({e.delta for e in enumerate_sigma(sig, k_max) if e.in_sigma0 or not only_sigma0})


@dataclass(frozen=True)
class ProbeEntry:
    k: int
    s: int
    status: str
    witness: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"k": self.k, "s": self.s, "status": self.status, "witness": dict(self.witness)}


def _spanning_set(sig: Signature, k: int, s: int) -> list[SymbolPolynomial]:
    """Projections of ``x^a xi^b`` with ``|b| = k`` and ``|a| <= k``, deduplicated.

    The recurrence for a ``(k, s)`` piece differentiates in x at most ``k``
    times, so these inputs exercise every linear condition it can meet.
    """
    n = sig.n
    seen = set()
    out = []
    for b in monomials_of_degree(n, k):
        for a in monomials_up_to(n, k):
            P = project(SymbolPolynomial.monomial(n, x=a, xi=b), k, s, sig)
            if P.is_zero() or P in seen:
                continue
            seen.add(P)
            out.append(P)
    return out


def probe_critical(sig: Signature, w: Weights, k_max: int) -> list[ProbeEntry]:
    """Classify every ``(k, s)`` with ``k <= k_max`` at the weights ``w``.

    ``OK``: no divisor vanished.  ``ResonantConsistent``: some divisor vanished
    but its right side was zero for every spanning input.  ``Critical``: some
    spanning input met a zero divisor with a nonzero right side; the witness
    records the step and the offending input.
    """
    if sig.n < 2:
        raise UnsupportedDimension("probing needs n >= 2")
    if not isinstance(k_max, int) or k_max < 0:
        raise ArgumentError("k_max must be a non-negative int")
    report = []
    for k in range(k_max + 1):
        for s in range(k // 2 + 1):
            status, witness = OK, {}
            for P in _spanning_set(sig, k, s):
                trace: list = []
                try:
                    solve_eigenvector(HarmonicComponent(k, s, P), w, sig, trace)
                except CriticalResonance as exc:
                    status = CRITICAL
                    witness = exc.witness()
                    witness["input"] = encode_polynomial(P, sig)
                    break
                hits = [st for st in trace if st.rhs_zero]
                if hits and status == OK:
                    status = CONSISTENT
                    st = hits[0]
                    witness = {"k": st.k, "s": st.s, "l": st.l, "t": st.t,
                               "delta": format_rational(w.delta)}
            report.append(ProbeEntry(k, s, status, witness))
    return report
