"""Command-line entry point: ``cequant <verb> [flags]``.

Every verb prints one JSON document on stdout (or to ``--out``).  Exit codes:
0 success, 1 a verification suite found failures, 2 critical resonance,
3 malformed flags or payload.
"""

from __future__ import annotations

import argparse
import os
import random
import sys

from . import codec
from .errors import CequantError, CriticalResonance
from .invariants import NAMES, casimir_operators, casimir_symbols, invariant_operator
from .poly import Signature, Weights
from .quantizer import i_hbar, quantization_result, quantize_graded, weyl_map
from .resonance import enumerate_sigma, probe_critical
from .scalars import format_rational, to_rational
from .star import StarTruncation, star

EXIT_OK, EXIT_FAILED, EXIT_CRITICAL, EXIT_USAGE = 0, 1, 2, 3
DEFAULT_SEED = 0


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p: argparse.ArgumentParser, weights: bool = False) -> None:
    p.add_argument("--n", type=int, help="dimension")
    p.add_argument("--p", type=int, help="number of +1 metric entries (default n)")
    p.add_argument("--q", type=int, help="number of -1 metric entries (default n - p)")
    if weights:
        p.add_argument("--lambda", dest="lam", help="source density weight (default 1/2)")
        p.add_argument("--mu", help="target density weight")
        p.add_argument("--delta", help="mu - lambda (default 0 if --mu absent)")
    p.add_argument("--in", dest="infile", help="input JSON file ('-' or absent: stdin)")
    p.add_argument("--out", help="write the JSON result here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cequant", description="Exact conformally equivariant quantization.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("quantize", help="quantize a symbol")
    _common(p, weights=True)
    p.add_argument("--map", choices=("quantize", "tilde", "graded", "weyl"), default="quantize",
                   help="which map to apply (default: quantize, i.e. with i*hbar scaling)")
    p.add_argument("--trace", action="store_true", help="include the recurrence divisors")

    p = sub.add_parser("star", help="star product of two symbols {\"P\": ..., \"Q\": ...}")
    _common(p)
    p.add_argument("--lambda", dest="lam", default="1/2")
    p.add_argument("--order", type=int, default=2, help="highest hbar power kept (default 2)")

    p = sub.add_parser("resonances", help="list resonant shifts")
    _common(p)
    p.add_argument("--max-k", type=int, default=2)

    p = sub.add_parser("probe", help="classify (k, s) cells as OK / resonant / critical")
    _common(p, weights=True)
    p.add_argument("--max-k", type=int, default=2)

    p = sub.add_parser("casimir", help="print a Casimir or named invariant operator")
    _common(p, weights=True)
    p.add_argument("--kind", choices=("symbols", "operators"), default="symbols")
    p.add_argument("--name", choices=NAMES, help="print a named invariant operator instead")
    p.add_argument("--apply", action="store_true", help="apply it to the symbol read from --in")

    p = sub.add_parser("verify", help="run a randomized identity suite")
    _common(p)
    from .verify import SUITES
    p.add_argument("--suite", choices=sorted(SUITES), default="equivariance")
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--seed", type=int)

    p = sub.add_parser("geodesic", help="check the quantized geodesic flow on a jet")
    _common(p)
    p.add_argument("--order", type=int, default=4, help="jet order for a random jet")
    p.add_argument("--seed", type=int)
    return parser


def _signature(args, doc_sig: Signature | None = None) -> Signature:
    if args.n is None:
        if doc_sig is not None and args.p is None and args.q is None:
            return doc_sig
        raise UsageError("--n is required")
    n = args.n
    p = args.p if args.p is not None else (n if args.q is None else n - args.q)
    q = args.q if args.q is not None else n - p
    if n < 1 or p < 0 or q < 0 or p + q != n:
        raise UsageError(f"inconsistent signature: n={n}, p={p}, q={q}")
    sig = Signature(p, q)
    if doc_sig is not None and doc_sig != sig:
        raise UsageError(f"payload signature ({doc_sig.p},{doc_sig.q}) differs from flags ({p},{q})")
    return sig


def _weights(args) -> Weights:
    lam = to_rational(args.lam if args.lam is not None else "1/2")
    if args.mu is not None:
        mu = to_rational(args.mu)
        if args.delta is not None and to_rational(args.delta) != mu - lam:
            raise UsageError("--delta disagrees with --mu - --lambda")
        return Weights(lam, mu)
    delta = to_rational(args.delta) if args.delta is not None else 0
    return Weights.from_delta(lam, delta)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("CEQUANT_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"CEQUANT_SEED must be an integer, got {env!r}") from None
    return DEFAULT_SEED


def _read(args, stdin):
    if args.infile in (None, "-"):
        text = stdin.read()
    else:
        try:
            with open(args.infile, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.infile}: {exc}") from None
    return codec.loads(text)


def _run(args, stdin):
    verb = args.verb
    if verb == "quantize":
        P, doc_sig = codec.decode_polynomial(_read(args, stdin))
        sig = _signature(args, doc_sig)
        w = _weights(args)
        if args.map == "weyl":
            return codec.encode_polynomial(weyl_map(P), sig, "symbol"), EXIT_OK
        if args.map == "graded":
            return codec.encode_polynomial(quantize_graded(P, w, sig), sig, "symbol"), EXIT_OK
        source = P if args.map == "tilde" else i_hbar(P)
        res = quantization_result(source, w, sig)
        doc = codec.encode_polynomial(res.output, sig, "operator")
        if args.trace:
            doc["trace"] = [{"k": t.k, "s": t.s, "l": t.l, "t": t.t,
                             "divisor": format_rational(t.divisor), "resonant": t.rhs_zero}
                            for t in res.trace]
        return doc, EXIT_OK
    if verb == "star":
        doc = _read(args, stdin)
        if not isinstance(doc, dict) or "P" not in doc or "Q" not in doc:
            raise UsageError("star expects {\"P\": polynomial, \"Q\": polynomial}")
        P, sp = codec.decode_polynomial(doc["P"], "P")
        Q, sq = codec.decode_polynomial(doc["Q"], "Q")
        if sp != sq:
            raise UsageError("P and Q have different signatures")
        sig = _signature(args, sp)
        out = star(P, Q, StarTruncation(args.order, to_rational(args.lam)), sig)
        return codec.encode_polynomial(out, sig, "symbol"), EXIT_OK
    if verb == "resonances":
        sig = _signature(args)
        entries = enumerate_sigma(sig, args.max_k)
        values = sorted({e.delta for e in entries})
        sigma0 = sorted({e.delta for e in entries if e.in_sigma0})
        return {"n": sig.n, "max_k": args.max_k,
                "values": [format_rational(v) for v in values],
                "sigma0_values": [format_rational(v) for v in sigma0],
                "entries": [e.as_dict() for e in entries]}, EXIT_OK
    if verb == "probe":
        sig = _signature(args)
        report = probe_critical(sig, _weights(args), args.max_k)
        return [e.as_dict() for e in report], EXIT_OK
    if verb == "casimir":
        if args.apply:
            P, doc_sig = codec.decode_polynomial(_read(args, stdin))
            sig = _signature(args, doc_sig)
        else:
            sig = _signature(args)
        if args.name:
            O = invariant_operator(args.name, sig)
        elif args.kind == "symbols":
            O = casimir_symbols(sig, _weights(args).delta)
        else:
            O = casimir_operators(sig, _weights(args))
        if args.apply:
            return codec.encode_polynomial(O(P), sig, "symbol"), EXIT_OK
        return codec.encode_endomorphism(O, sig), EXIT_OK
    if verb == "verify":
        from .verify import run_suite
        sig = _signature(args)
        res = run_suite(args.suite, sig, args.degree, _seed(args))
        return res.as_dict(), (EXIT_OK if res.failures == 0 else EXIT_FAILED)
    if verb == "geodesic":
        from .curved import MetricJet, geodesic_flow_check
        from .verify import random_jet
        if args.infile is not None:
            doc = _read(args, stdin)
            sig = _signature(args) if args.n is not None else None
            jet = codec.decode_jet(doc, sig.n if sig else None)
            sig = sig or Signature(jet.n, 0)
        else:
            sig = _signature(args)
            jet = random_jet(sig.n, args.order, random.Random(_seed(args)))
        rep = geodesic_flow_check(MetricJet(jet, sig))
        doc = rep.as_dict()
        doc["p"], doc["q"] = sig.p, sig.q
        return doc, (EXIT_OK if rep.passed else EXIT_FAILED)
    raise UsageError(f"unknown verb {verb!r}")  # pragma: no cover


def main(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        result, code = _run(args, stdin)
    except UsageError as exc:
        print(f"cequant: error: {exc}", file=stderr)
        return EXIT_USAGE
    except CriticalResonance as exc:
        print(f"cequant: {exc}", file=stderr)
        print(codec.dumps({"error": "CriticalResonance", "witness": exc.witness()}), file=stdout)
        return EXIT_CRITICAL
    except CequantError as exc:
        print(f"cequant: error: {exc}", file=stderr)
        return EXIT_USAGE
    text = codec.dumps(result)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print(f"cequant: error: cannot write {args.out}: {exc}", file=stderr)
            return EXIT_USAGE
    else:
        print(text, file=stdout)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
