from __future__ import annotations

import random

import pytest

from polardeg.errors import InputError, NotReduced
from polardeg.local import singular_table
from polardeg.oracle import bezout_ledger_check, fiber_count_plane, hessian_determinant, oracle_polar_degree
from polardeg.polar import polar_degree_plane

from conftest import P, random_form


@pytest.mark.parametrize(
    "text,count",
    [
        ("x*z - y^2", 1),
        ("x*y*z", 1),
        ("y^2*z - x^3", 2),
        ("x^3 + y^3 + z^3", 4),
        ("x^2*y^2 + y^2*z^2 + z^2*x^2 - 2*x*y*z*(x+y+z)", 3),
    ],
)
def test_fiber_counts(text, count):
    f = P(text)
    result = oracle_polar_degree(f)
    assert not result.degenerate
    assert result.fiber_count == count
    assert bezout_ledger_check(f, result, singular_table(f))


def test_degenerate_cases():
    assert fiber_count_plane(P("x*y")).degenerate
    assert fiber_count_plane(P("x*y*(x - y)")).degenerate
    assert hessian_determinant(P("x*y")).is_zero()


def test_input_checks():
    with pytest.raises(NotReduced):
        fiber_count_plane(P("x^2*y"))
    with pytest.raises(InputError):
        fiber_count_plane(P("x^2 + y"))
    with pytest.raises(InputError):
        bezout_ledger_check(P("x*y"), fiber_count_plane(P("x*y")), singular_table(P("x*y")))


@pytest.mark.parametrize("seed", range(5))
def test_agrees_with_milnor_route(seed):
    rng = random.Random(seed)
    f = random_form(rng, rng.randint(2, 4), density=0.5)
    try:
        report = polar_degree_plane(f)
    except NotReduced:
        pytest.skip("draw is not reduced")
    result = oracle_polar_degree(report.singular_table.curve, seed)
    assert (0 if result.degenerate else result.fiber_count) == report.polar_degree


def test_base_points_are_the_singular_points():
    f = P("y^2*z - x^3 - x^2*z")
    r = fiber_count_plane(f, seed=3)
    assert r.singular_point_count == 1
    assert r.distinct_common_zeros == r.fiber_count + 1
