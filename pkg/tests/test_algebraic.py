from __future__ import annotations

import random

import pytest
import mpmath
import sympy
from flint import fmpq, fmpq_poly

from polardeg.errors import PositiveDimensional
from polardeg.algebraic import (
    ExtensionContext,
    Split,
    TowerContext,
    count_distinct_intersections,
    run_split,
    solve_bivariate,
    total_count,
)

from conftest import P, random_form, to_sympy

XY = ("x", "y")


def test_extension_arithmetic():
    ctx = ExtensionContext(fmpq_poly([-2, 0, 1]))  # t^2 = 2
    t = ctx.gen()
    assert t * t == ctx.element(2)
    assert (t + 1) * (t - 1) == ctx.element(1)
    assert (t * t.inverse()) == ctx.element(1)


def test_zero_divisor_splits():
    ctx = ExtensionContext(fmpq_poly([0, -1, 0, 1]))  # t^3 - t
    t = ctx.gen()
    with pytest.raises(Split) as info:
        t.inverse()
    assert sum(f.degree() for f in info.value.factors) == 3

    def fn(c):
        return (c.gen() * c.gen()).is_zero() or c.gen().inverse() is None

    pieces = run_split(ctx, fn)
    assert sum(p.degree for p, _ in pieces) == 3


def test_tower():
    base = ExtensionContext(fmpq_poly([-2, 0, 1]))
    s = base.gen()
    tower = TowerContext(base, [-s, base.element(0), base.element(1)])  # u^2 = sqrt 2
    u = tower.gen()
    assert (u * u * u * u) == tower.coerce(base.element(2))
    assert tower.absolute_degree == 4


def test_solve_counts_conic_and_lines():
    assert total_count(solve_bivariate(P("x*y - 1", XY), P("x - y", XY))) == 2
    # y^2 + y - 1 = 0 and x^2 = y: two x for each y
    assert total_count(solve_bivariate(P("x^2 + y^2 - 1", XY), P("x^2 - y", XY))) == 4
    # tangency point counted once
    assert total_count(solve_bivariate(P("y - x^2", XY), P("y", XY))) == 1


@pytest.mark.parametrize("seed", range(12))
def test_solve_matches_sympy(seed):
    rng = random.Random(seed)
    f = random_form(rng, 2, XY + ("z",)).substitute({"z": 1}).with_variables(XY)
    g = random_form(rng, 2, XY + ("z",)).substitute({"z": 1}).with_variables(XY)
    x, y = sympy.symbols("x y")
    try:
        ours = total_count(solve_bivariate(f, g))
    except PositiveDimensional:
        pytest.skip("the draw has a common component")
    assert ours == _numeric_count(to_sympy(f), to_sympy(g), x, y)


def _numeric_count(f, g, x, y):
    """Distinct complex solutions, located numerically with mpmath."""
    mpmath.mp.dps = 50
    res = sympy.Poly(sympy.sqf_part(sympy.resultant(f, g, y)), x, domain="QQ")
    if res.degree() < 1:
        return 0
    funcs = {h: sympy.lambdify((x, y), h, "mpmath") for h in (f, g)}
    coeffs = {h: [sympy.lambdify(x, c, "mpmath") for c in sympy.Poly(h, y).all_coeffs()] for h in (f, g)}
    pts = []
    for xr in mpmath.polyroots([mpmath.mpf(int(c.p)) / int(c.q) for c in res.all_coeffs()], maxsteps=500, extraprec=300):
        for a, b in ((g, f), (f, g)):
            cs = [mpmath.mpc(c(xr)) for c in coeffs[a]]
            while cs and abs(cs[0]) < mpmath.mpf(10) ** -30:
                cs.pop(0)
            if len(cs) >= 2:
                break
        else:
            continue
        for yr in mpmath.polyroots(cs, maxsteps=2000, extraprec=1000):
            if abs(funcs[b](xr, yr)) < 1e-8 and not any(abs(xr - u) + abs(yr - v) < 1e-6 for u, v in pts):
                pts.append((xr, yr))
    return len(pts)
