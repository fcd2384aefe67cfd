"""JSON documents for symbols, operators, endomorphisms, jets and probe reports.

Rationals travel as ``"num/den"`` strings.  A polynomial document is

    {"n": 2, "p": 2, "q": 0, "role": "symbol",
     "terms": [{"x": [1, 0], "xi": [1, 0], "c": [["1", "0", 0], ["0", "1/2", 1]]}]}

where each ``c`` entry is ``[re, im, hbar_power]``.  Encoders sort terms
lexicographically so output is byte-stable.
"""

from __future__ import annotations

import json

from .endo import EndoOperator
from .errors import ArgumentError, CodecError
from .poly import Signature, SymbolPolynomial
from .scalars import ScaledCoefficient, format_rational, to_rational

__all__ = [
    "encode_polynomial",
    "decode_polynomial",
    "encode_endomorphism",
    "decode_endomorphism",
    "encode_jet",
    "decode_jet",
    "decode_signature",
    "dumps",
    "loads",
]

ROLES = ("symbol", "operator")


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CodecError(f"invalid JSON: {exc}") from None


def _rat(value, where: str):
    if not isinstance(value, str):
        raise CodecError(f"{where}: rationals must be strings like \"3/2\", got {value!r}")
    try:
        return to_rational(value)
    except ArgumentError as exc:
        raise CodecError(f"{where}: {exc}") from None


def _int(value, where: str, minimum: int = 0) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
        raise CodecError(f"{where}: expected an integer >= {minimum}, got {value!r}")
    return value


def _exps(value, n: int, where: str) -> tuple:
    if not isinstance(value, list) or len(value) != n:
        raise CodecError(f"{where}: expected a list of {n} exponents")
    return tuple(_int(v, where) for v in value)


def _require(doc, keys, where: str) -> None:
    if not isinstance(doc, dict):
        raise CodecError(f"{where}: expected an object")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise CodecError(f"{where}: missing field(s) {missing}")


def _coeff_list(sc_list) -> list:
    return [[format_rational(sc.re), format_rational(sc.im), sc.hpow] for sc in sc_list]


def _decode_coeffs(value, where: str) -> list:
    if not isinstance(value, list) or not value:
        raise CodecError(f"{where}: 'c' must be a non-empty list of [re, im, hpow]")
    out = []
    for entry in value:
        if not isinstance(entry, list) or len(entry) != 3:
            raise CodecError(f"{where}: coefficient entries are [re, im, hpow]")
        out.append(ScaledCoefficient(_rat(entry[0], where), _rat(entry[1], where),
                                     _int(entry[2], where)))
    return out


def decode_signature(doc, where: str = "document") -> Signature:
    _require(doc, ("n",), where)
    n = _int(doc["n"], f"{where}.n", 1)
    if "p" not in doc and "q" in doc:
        q = _int(doc["q"], f"{where}.q")
        p = n - q
    else:
        p = _int(doc.get("p", n), f"{where}.p")
        q = _int(doc.get("q", n - p), f"{where}.q")
    if p + q != n:
        raise CodecError(f"{where}: p + q must equal n")
    return Signature(p, q)


def encode_polynomial(P: SymbolPolynomial, sig: Signature | None = None, role: str = "symbol") -> dict:
    if role not in ROLES:
        raise ArgumentError(f"role must be one of {ROLES}")
    sig = sig or Signature(P.n, 0)
    terms = [{"x": list(xe), "xi": list(xie), "c": _coeff_list(cl)}
             for (xe, xie), cl in P.coefficients().items()]
    return {"n": P.n, "p": sig.p, "q": sig.q, "role": role, "terms": terms}


def decode_polynomial(doc, where: str = "polynomial") -> tuple[SymbolPolynomial, Signature]:
    """Return ``(polynomial, signature)``."""
    _require(doc, ("n", "terms"), where)
    sig = decode_signature(doc, where)
    if doc.get("role", "symbol") not in ROLES:
        raise CodecError(f"{where}: role must be one of {ROLES}")
    if not isinstance(doc["terms"], list):
        raise CodecError(f"{where}.terms must be a list")
    coeffs: dict = {}
    for i, t in enumerate(doc["terms"]):
        tw = f"{where}.terms[{i}]"
        _require(t, ("x", "xi", "c"), tw)
        mono = (_exps(t["x"], sig.n, tw + ".x"), _exps(t["xi"], sig.n, tw + ".xi"))
        if mono in coeffs:
            raise CodecError(f"{tw}: duplicate monomial")
        coeffs[mono] = _decode_coeffs(t["c"], tw)
    return SymbolPolynomial.from_coefficients(sig.n, coeffs), sig


def encode_endomorphism(O: EndoOperator, sig: Signature | None = None) -> dict:
    n = O.n
    sig = sig or Signature(n, 0)
    grouped: dict = {}
    for k, c in O.terms.items():
        mono = (k[:n], k[n:2 * n], k[2 * n:3 * n], k[3 * n:4 * n])
        slot = grouped.setdefault(mono, {})
        re, im = slot.get(k[4 * n], (0, 0))
        if k[4 * n + 1]:
            im = c
        else:
            re = c
        slot[k[4 * n]] = (re, im)
    terms = []
    for mono in sorted(grouped):
        slot = grouped[mono]
        terms.append({"x": list(mono[0]), "xi": list(mono[1]), "dx": list(mono[2]),
                      "dxi": list(mono[3]),
                      "c": [[format_rational(re), format_rational(im), h]
                            for h, (re, im) in sorted(slot.items())]})
    return {"n": n, "p": sig.p, "q": sig.q, "role": "endomorphism", "terms": terms}


def decode_endomorphism(doc, where: str = "endomorphism") -> tuple[EndoOperator, Signature]:
    _require(doc, ("n", "terms"), where)
    sig = decode_signature(doc, where)
    n = sig.n
    if not isinstance(doc["terms"], list):
        raise CodecError(f"{where}.terms must be a list")
    out = EndoOperator(n)
    for i, t in enumerate(doc["terms"]):
        tw = f"{where}.terms[{i}]"
        _require(t, ("x", "xi", "dx", "dxi", "c"), tw)
        base = (_exps(t["x"], n, tw) + _exps(t["xi"], n, tw) + _exps(t["dx"], n, tw)
                + _exps(t["dxi"], n, tw))
        terms = {}
        for sc in _decode_coeffs(t["c"], tw):
            if sc.re:
                terms[base + (sc.hpow, 0)] = sc.re
            if sc.im:
                terms[base + (sc.hpow, 1)] = sc.im
        out = out + EndoOperator(n, terms)
    return out, sig


def encode_jet(J) -> dict:
    coeffs = [{"x": list(e), "v": format_rational(v)} for e, v in sorted(J.coefficients().items())]
    return {"n": J.n, "r": J.order, "coeffs": coeffs}


def decode_jet(doc, n: int | None = None, where: str = "jet"):
    from .curved import TaylorJet

    _require(doc, ("r", "coeffs"), where)
    r = _int(doc["r"], f"{where}.r")
    if not isinstance(doc["coeffs"], list):
        raise CodecError(f"{where}.coeffs must be a list")
    if n is None:
        if "n" in doc:
            n = _int(doc["n"], f"{where}.n", 1)
        elif doc["coeffs"] and isinstance(doc["coeffs"][0], dict) and isinstance(doc["coeffs"][0].get("x"), list):
            n = len(doc["coeffs"][0]["x"])
        else:
            raise CodecError(f"{where}: cannot infer n from an empty jet; add an 'n' field")
    values: dict = {}
    for i, entry in enumerate(doc["coeffs"]):
        ew = f"{where}.coeffs[{i}]"
        _require(entry, ("x", "v"), ew)
        e = _exps(entry["x"], n, ew + ".x")
        if sum(e) > r:
            raise CodecError(f"{ew}: degree {sum(e)} exceeds jet order {r}")
        if e in values:
            raise CodecError(f"{ew}: duplicate exponent")
        values[e] = _rat(entry["v"], ew + ".v")
    return TaylorJet(n, r, values)
