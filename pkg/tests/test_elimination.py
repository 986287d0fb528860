from __future__ import annotations

import random

import pytest
import sympy
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import given
from hypothesis import strategies as st

from polardeg import upoly
from polardeg.elimination import gcd, is_squarefree, resultant, squarefree_decomposition, squarefree_part
from polardeg.poly import Polynomial

from conftest import XYZ, P, random_form, to_sympy

XY = ("x", "y")


def test_resultant_small_cases():
    assert resultant(P("y^2 - x^3", XY), P("2*y", XY), "y") == P("-4*x^3", XY)
    assert resultant(P("y - x", XY), P("y + x", XY), "y") == P("2*x", XY)


@pytest.mark.parametrize("seed", range(8))
def test_resultant_matches_sympy(seed):
    rng = random.Random(seed)
    f = g = P("1", XYZ)
    while f.degree("y") == 0 or g.degree("y") == 0:
        f = random_form(rng, rng.randint(1, 3))
        g = random_form(rng, rng.randint(1, 3))
    x, y, z = sympy.symbols("x y z")
    # the Sylvester determinant; sympy.resultant drops a sign when deg f < deg g
    expected = sylvester(to_sympy(f), to_sympy(g), y).det()
    assert to_sympy(resultant(f, g, "y")) == sympy.expand(expected)


@pytest.mark.parametrize("seed", range(8))
def test_gcd_matches_sympy(seed):
    rng = random.Random(100 + seed)
    common = random_form(rng, rng.randint(1, 2))
    f = common * random_form(rng, rng.randint(1, 2))
    g = common * random_form(rng, rng.randint(0, 2)) if rng.random() < 0.8 else random_form(rng, 2)
    ours = to_sympy(gcd(f, g))
    theirs = sympy.gcd(to_sympy(f), to_sympy(g))
    assert sympy.simplify(ours / theirs).is_number


def test_squarefree_decomposition():
    f = P("x^3*(x+y)^2*(y^2-z^2)")
    parts = squarefree_decomposition(f)
    mult = {i: b for b, i in parts}
    assert sympy.simplify(to_sympy(mult[3]) / to_sympy(P("x"))).is_number
    assert sympy.simplify(to_sympy(mult[2]) / to_sympy(P("x+y"))).is_number
    assert not is_squarefree(f)
    assert is_squarefree(squarefree_part(f))
    assert squarefree_part(f).total_degree() == 4


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=5), st.lists(st.integers(-5, 5), min_size=1, max_size=5))
def test_univariate_xgcd_bezout(a, b):
    a, b = upoly.strip(a), upoly.strip(b)
    if not a or not b:
        return
    g, s, t = upoly.xgcd(a, b)
    assert upoly.normalize(upoly.add(upoly.mul(s, a), upoly.mul(t, b))) == upoly.normalize(g)
    assert not upoly.rem(a, g) and not upoly.rem(b, g)


def test_squarefree_part_line_certificate_matches_sympy():
    rng = random.Random(7)
    for _ in range(5):
        f = random_form(rng, 2)
        g = f * f * random_form(rng, 1)
        sf = squarefree_part(g)
        assert sf.total_degree() == sympy.Poly(sympy.sqf_part(to_sympy(g)), *sympy.symbols("x y z")).total_degree()


def test_constant_gcd():
    assert gcd(P("x"), P("y")).is_constant()
    assert gcd(P("x"), Polynomial.zero(XYZ)) == P("x")
