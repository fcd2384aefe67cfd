import random

import pytest
from gmpy2 import mpq

from cequant.codec import (decode_endomorphism, decode_jet, decode_polynomial, decode_signature,
                           dumps, encode_endomorphism, encode_jet, encode_polynomial, loads)
from cequant.curved import TaylorJet
from cequant.errors import CodecError
from cequant.invariants import casimir_operators, invariant_operator
from cequant.poly import Signature, SymbolPolynomial, Weights, random_symbol
from cequant.verify import random_jet

from conftest import X, XI


def test_polynomial_document_shape():
    P = X(2, 1) * XI(2, 1) * mpq(3, 2) + SymbolPolynomial.imag_unit(2) * SymbolPolynomial.hbar(2) / 2
    doc = encode_polynomial(P, Signature(1, 1), "operator")
    assert doc == {"n": 2, "p": 1, "q": 1, "role": "operator", "terms": [
        {"x": [0, 0], "xi": [0, 0], "c": [["0", "1/2", 1]]},
        {"x": [1, 0], "xi": [1, 0], "c": [["3/2", "0", 0]]},
    ]}
    assert dumps(doc) == dumps(loads(dumps(doc)))


def test_round_trip_random_symbol():
    rng = random.Random(5)
    sig = Signature(2, 1)
    P = random_symbol(3, 5, 3, rng, nterms=12, real=False)
    P = P + P.times_i_hbar(2)
    Q, sig2 = decode_polynomial(encode_polynomial(P, sig))
    assert Q == P and Q.terms == P.terms and sig2 == sig


def test_encode_decode_encode_stable():
    doc = {"n": 2, "terms": [{"x": [0, 1], "xi": [2, 0], "c": [["-6/4", "0", 0]]},
                             {"x": [1, 0], "xi": [0, 0], "c": [["1", "0", 0]]}]}
    P, sig = decode_polynomial(doc)
    out = encode_polynomial(P, sig)
    assert sig == Signature(2, 0)
    assert out["terms"][0]["c"] == [["-3/2", "0", 0]]
    assert encode_polynomial(decode_polynomial(out)[0], sig) == out


@pytest.mark.parametrize("doc", [
    {"n": 2, "terms": [{"x": [0, 0], "xi": [1, 0], "c": [["1/0", "0", 0]]}]},
    {"n": 2, "terms": [{"x": [0, 0], "xi": [1, 0], "c": [[1, "0", 0]]}]},
    {"n": 2, "terms": [{"x": [0], "xi": [1, 0], "c": [["1", "0", 0]]}]},
    {"n": 2, "terms": [{"x": [0, -1], "xi": [1, 0], "c": [["1", "0", 0]]}]},
    {"n": 2, "terms": [{"x": [0, 0], "xi": [1, 0], "c": []}]},
    {"n": 2, "terms": [{"x": [0, 0], "xi": [1, 0]}]},
    {"n": 2, "terms": [{"x": [0, 0], "xi": [1, 0], "c": [["1", "0", 0]]},
                       {"x": [0, 0], "xi": [1, 0], "c": [["2", "0", 0]]}]},
    {"n": 2, "p": 1, "q": 0, "terms": []},
    {"n": 2, "role": "banana", "terms": []},
    {"n": 0, "terms": []},
    {"terms": []},
    [1, 2],
])
def test_malformed_polynomials(doc):
    with pytest.raises(CodecError):
        decode_polynomial(doc)


def test_loads_rejects_bad_json():
    with pytest.raises(CodecError):
        loads("{not json")


def test_signature_defaults():
    assert decode_signature({"n": 3}) == Signature(3, 0)
    assert decode_signature({"n": 3, "q": 1}) == Signature(2, 1)


def test_endomorphism_round_trip():
    sig = Signature(1, 1)
    for O in (invariant_operator("G0", sig), casimir_operators(sig, Weights(mpq(1, 3), mpq(3, 4)))):
        doc = encode_endomorphism(O, sig)
        assert doc["role"] == "endomorphism"
        back, s = decode_endomorphism(doc)
        assert back == O and s == sig


def test_jet_round_trip():
    J = random_jet(3, 4, random.Random(1))
    doc = encode_jet(J)
    assert doc["r"] == 4 and doc["n"] == 3
    assert decode_jet(doc) == J
    del doc["n"]
    assert decode_jet(doc) == J


@pytest.mark.parametrize("doc", [
    {"r": 2, "coeffs": [{"x": [3, 0], "v": "1"}]},
    {"r": 2, "coeffs": [{"x": [0, 0], "v": "1"}, {"x": [0, 0], "v": "2"}]},
    {"r": 2, "coeffs": [{"x": [0, 0], "v": "1/0"}]},
    {"r": 2, "coeffs": []},
    {"r": -1, "coeffs": [{"x": [0, 0], "v": "1"}]},
    {"coeffs": []},
])
def test_malformed_jets(doc):
    with pytest.raises(CodecError):
        decode_jet(doc)


def test_jet_with_explicit_n():
    J = decode_jet({"r": 2, "coeffs": []}, n=2)
    assert J == TaylorJet.constant(2, 2, 0)
