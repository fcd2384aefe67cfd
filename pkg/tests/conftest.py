import random

import pytest
from hypothesis import strategies as st

from cequant.poly import Signature, SymbolPolynomial, random_symbol

X = SymbolPolynomial.x
XI = SymbolPolynomial.xi


def xs(n, *exps, coeff=1):
    """Monomial from an x-exponent list followed by a xi-exponent list."""
    return SymbolPolynomial.monomial(n, x=exps[0], xi=exps[1], coeff=coeff)


@pytest.fixture
def rng():
    return random.Random(20240611)


SIGNATURES = [Signature(2, 0), Signature(1, 1), Signature(3, 0), Signature(2, 1)]


@st.composite
def symbols(draw, n=2, xi_degree=3, x_degree=3, real=True):
    seed = draw(st.integers(0, 2**32 - 1))
    d = draw(st.integers(0, xi_degree))
    nterms = draw(st.integers(1, 6))
    return random_symbol(n, d, x_degree, random.Random(seed), nterms=nterms, real=real)


# -- acceptance reporting ---------------------------------------------------------

_CRITERIA: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    entry = _CRITERIA.setdefault(number, {"title": title, "status": "PASS", "seconds": 0.0})
    if report.when == "call":
        entry["seconds"] += report.duration
    if hasattr(report, "wasxfail"):
        entry["status"] = "FAIL (known: " + report.wasxfail + ")"
    elif report.failed:
        entry["status"] = "FAIL"
    elif report.skipped and entry["status"] == "PASS":
        entry["status"] = "SKIPPED"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        e = _CRITERIA[number]
        terminalreporter.write_line(
            f"criterion {number:2d} {e['status']:<5} {e['title']} ({e['seconds']:.1f}s)")
