"""Randomized and exhaustive identity checks, shared by the CLI and the tests.

Each suite returns a :class:`SuiteResult` counting individual exact checks.
All randomness flows from the ``seed`` argument.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from gmpy2 import mpq

from . import diffop
from .curved import MetricJet, TaylorJet, geodesic_flow_check
from .endo import EndoOperator, commutator
from .errors import ArgumentError
from .invariants import (casimir_operators, casimir_operators_basis_sum, casimir_symbols,
                         casimir_symbols_basis_sum, invariant_operator)
from .lie import conformal_generators, operator_lie, symbol_lie
from .poly import Signature, SymbolPolynomial, Weights, monomials_up_to, random_symbol
from .quantizer import quantize, quantize_tilde, second_order_map, second_order_resonances
from .star import StarTruncation, poisson_bracket, star

__all__ = ["SuiteResult", "SUITES", "run_suite", "random_jet", "DEFAULT_WEIGHTS"]

# generic weights: delta = 5/12 keeps every tested degree away from critical shifts
DEFAULT_WEIGHTS = Weights(mpq(1, 3), mpq(3, 4))


@dataclass
class SuiteResult:
    suite: str
    checked: int = 0
    failures: int = 0
    details: list = field(default_factory=list)

    def record(self, ok: bool, what: str) -> None:
        self.checked += 1
        if not ok:
            self.failures += 1
            if len(self.details) < 20:
                self.details.append(what)

    def as_dict(self) -> dict:
        out = {"suite": self.suite, "checked": self.checked, "failures": self.failures}
        if self.details:
            out["details"] = self.details
        return out


def random_jet(n: int, order: int, rng: random.Random, flat_first_order: bool = False) -> TaylorJet:
    """Random rational jet with constant term 1."""
    values = {}
    for e in monomials_up_to(n, order):
        d = sum(e)
        if d == 0:
            values[e] = 1
        elif d == 1 and flat_first_order:
            continue
        else:
            values[e] = mpq(rng.randint(-4, 4), rng.randint(1, 3))
    return TaylorJet(n, order, values)


def equivariance(sig: Signature, degree: int, seed: int, count: int = 10,
                 w: Weights = DEFAULT_WEIGHTS) -> SuiteResult:
    res = SuiteResult("equivariance")
    rng = random.Random(seed)
    basis = conformal_generators(sig)
    for trial in range(count):
        P = random_symbol(sig.n, rng.randint(0, degree), 3, rng, nterms=6)
        Q = quantize_tilde(P, w, sig)
        for gid, X in zip(basis.ids, basis.generators):
            lhs = operator_lie(X, Q, w)
            rhs = quantize_tilde(symbol_lie(X, P, w.delta), w, sig)
            res.record(lhs == rhs, f"trial {trial}, generator {gid}")
    return res


def casimir(sig: Signature, degree: int, seed: int, count: int = 3) -> SuiteResult:
    res = SuiteResult("casimir")
    rng = random.Random(seed)
    basis = conformal_generators(sig)
    for _ in range(count):
        delta = mpq(rng.randint(-6, 6), rng.randint(1, 5))
        lam = mpq(rng.randint(-6, 6), rng.randint(1, 5))
        w = Weights.from_delta(lam, delta)
        Cs = casimir_symbols(sig, delta)
        Co = casimir_operators(sig, w)
        res.record(casimir_symbols_basis_sum(sig, delta) == Cs, f"symbol basis sum, delta={delta}")
        res.record(casimir_operators_basis_sum(sig, w) == Co, f"operator basis sum, {w}")
        P = random_symbol(sig.n, degree, 2, rng, nterms=6)
        for gid, X in zip(basis.ids, basis.generators):
            a = Cs(symbol_lie(X, P, delta)) - symbol_lie(X, Cs(P), delta)
            res.record(a.is_zero(), f"symbol Casimir vs {gid}")
            b = Co(operator_lie(X, P, w)) - operator_lie(X, Co(P), w)
            res.record(b.is_zero(), f"operator Casimir vs {gid}")
    return res


def commutant(sig: Signature, degree: int, seed: int) -> SuiteResult:
    res = SuiteResult("commutant")
    op = lambda name: invariant_operator(name, sig)
    R, E, T, G, D, Delta = (op(x) for x in ("R", "E", "T", "G", "D", "Delta"))
    zero = EndoOperator(sig.n)
    relations = {
        "[E,R]=2R": (commutator(E, R), R * 2),
        "[E,T]=-2T": (commutator(E, T), T * -2),
        "[T,R]=4E": (commutator(T, R), E * 4),
        "[D,R]=2G": (commutator(D, R), G * 2),
        "[R,G]=0": (commutator(R, G), zero),
        "[D,G]=Delta": (commutator(D, G), Delta),
        "[G,T]=-2D": (commutator(G, T), D * -2),
        "[E,G]=G": (commutator(E, G), G),
        "[E,D]=-D": (commutator(E, D), -D),
        "[T,D]=0": (commutator(T, D), zero),
        "[E,Delta]=0": (commutator(E, Delta), zero),
        "[R,Delta]=0": (commutator(R, Delta), zero),
        "[T,Delta]=0": (commutator(T, Delta), zero),
        "[G,Delta]=0": (commutator(G, Delta), zero),
        "[D,Delta]=0": (commutator(D, Delta), zero),
    }
    for name, (a, b) in relations.items():
        res.record(a == b, name)
    if sig.n == 2:
        res.record(op("Z").is_zero(), "Z vanishes")
    return res


def star_suite(sig: Signature, degree: int, seed: int, count: int = 10) -> SuiteResult:
    res = SuiteResult("star")
    rng = random.Random(seed)
    half = StarTruncation(2, mpq(1, 2))
    iu = SymbolPolynomial.imag_unit(sig.n)
    for trial in range(count):
        P = random_symbol(sig.n, rng.randint(0, degree), 2, rng)
        Q = random_symbol(sig.n, rng.randint(0, degree), 2, rng)
        pq = star(P, Q, half, sig)
        res.record(pq.hbar_part(0) == P * Q, f"zeroth order, trial {trial}")
        res.record(pq.hbar_part(1) == poisson_bracket(P, Q) * iu / 2, f"first order, trial {trial}")
    return res


def adjoint_suite(sig: Signature, degree: int, seed: int, count: int = 10) -> SuiteResult:
    res = SuiteResult("adjoint")
    rng = random.Random(seed)
    for delta in (mpq(0), mpq(1, 3)):
        w = Weights.symmetric(delta)
        for trial in range(count):
            P = random_symbol(sig.n, rng.randint(0, degree), 3, rng)
            A = quantize(P, w, sig)
            res.record(diffop.adjoint(A) == A, f"delta={delta}, trial {trial}")
    return res


def geodesic(sig: Signature, degree: int, seed: int, count: int = 3) -> SuiteResult:
    res = SuiteResult("geodesic")
    rng = random.Random(seed)
    order = max(degree, 2)
    for trial in range(count):
        m = MetricJet(random_jet(sig.n, order, rng), sig)
        rep = geodesic_flow_check(m)
        res.record(rep.passed, f"jet {trial}: {rep.differences[:2]}")
    return res


def second_order(sig: Signature, degree: int, seed: int, count: int = 9) -> SuiteResult:
    res = SuiteResult("second-order")
    rng = random.Random(seed)
    bad = set(second_order_resonances(sig.n))
    done = 0
    while done < count:
        lam = mpq(rng.randint(-9, 9), rng.randint(1, 7))
        mu = mpq(rng.randint(-9, 9), rng.randint(1, 7))
        if mu - lam in bad:
            continue
        done += 1
        w = Weights(lam, mu)
        M = second_order_map(sig, w)
        P = random_symbol(sig.n, 2, 3, rng, nterms=8)
        res.record(quantize_tilde(P, w, sig) == M(P), f"{w}")
    return res


SUITES = {
    "equivariance": equivariance,
    "casimir": casimir,
    "commutant": commutant,
    "star": star_suite,
    "adjoint": adjoint_suite,
    "geodesic": geodesic,
    "second-order": second_order,
}


def run_suite(name: str, sig: Signature, degree: int, seed: int) -> SuiteResult:
    if name not in SUITES:
        raise ArgumentError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    if not isinstance(degree, int) or degree < 0:
        raise ArgumentError("degree must be a non-negative int")
    return SUITES[name](sig, degree, seed)
