from __future__ import annotations

import random

import pytest
import sympy
from hypothesis import HealthCheck, settings

from polardeg.poly import Polynomial, parse_polynomial

settings.register_profile("polardeg", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("polardeg")

XYZ = ("x", "y", "z")


def P(text: str, variables=XYZ) -> Polynomial:
    return parse_polynomial(text, variables)


def to_sympy(f: Polynomial):
    syms = sympy.symbols(f.variables)
    expr = sympy.Integer(0)
    for e, c in f.terms.items():
        term = sympy.Rational(int(c.p), int(c.q))
        for s, a in zip(syms, e):
            term *= s**a
        expr += term
    return sympy.expand(expr)


def from_sympy(expr, variables) -> Polynomial:
    return parse_polynomial(str(sympy.expand(expr)).replace("**", "^"), variables)


def random_form(rng: random.Random, k: int, variables=XYZ, density: float = 0.6, bound: int = 5) -> Polynomial:
    """A random nonzero form of degree ``k``."""
    n = len(variables)
    while True:
        terms = {}
        for e in _monomials(k, n):
            if rng.random() < density:
                terms[e] = rng.randint(-bound, bound)
        f = Polynomial(variables, terms)
        if not f.is_zero() and f.is_homogeneous() == (True, k):
            return f


def _monomials(k: int, n: int):
    if n == 1:
        yield (k,)
        return
    for a in range(k, -1, -1):
        for rest in _monomials(k - a, n - 1):
            yield (a,) + rest


@pytest.fixture
def rng():
    return random.Random(12345)


# acceptance report: one line per criterion at the end of the run

_ACCEPTANCE: dict[int, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and not report.passed):
        status = "PASS" if report.passed else "FAIL"
        previous = _ACCEPTANCE.get(number)
        if previous is None or previous[0] == "PASS":
            _ACCEPTANCE[number] = (status, title)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        status, title = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status} - {title}")
