from __future__ import annotations

import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polardeg.errors import InputError, Undecided, Unsupported
from polardeg.polar import (
    arrangement_dt,
    cone_union_components,
    cone_union_construction,
    cremona_projective_degrees,
    is_cone,
    is_homaloidal_plane,
    normal_crossings_dt,
    pairwise_correction_q,
    polar_degree,
    polar_degree_irreducible_via_genus,
    polar_degree_isolated,
    polar_degree_plane,
    polar_degree_union,
    projective_degrees,
)
from polardeg.poly import CoordinateChange, apply_change

from conftest import P, random_form

V4 = ("x", "y", "z", "w")


@pytest.mark.parametrize(
    "text,dt",
    [
        ("x*y*z", 1),
        ("x*z - y^2", 1),
        ("(x*z - y^2)*z", 1),
        ("y^2*z - x^3", 2),
        ("y^2*z - x^3 - x^2*z", 3),
        ("x^3 + y^3 + z^3", 4),
        ("x*y*(x + y)", 0),
        ("x^4 + y^4 + z^4", 9),
    ],
)
def test_plane_values(text, dt):
    assert polar_degree_plane(P(text)).polar_degree == dt


def test_multiple_components_are_reduced_first():
    assert polar_degree_plane(P("x^2*y*z")).polar_degree == 1


def test_report_shape():
    report = polar_degree_plane(P("y^2*z - x^3"))
    doc = report.to_json()
    assert doc["k"] == 3 and doc["projective_degrees"] == [2, 2]
    assert [(s["mu"], s["r"], s["delta"], s["count"]) for s in doc["singularities"]] == [(2, 1, 1, 1)]


def test_homaloidal_labels():
    assert is_homaloidal_plane(P("x*y*z")) == (True, "three nonconcurrent lines")
    assert is_homaloidal_plane(P("x*z - y^2")) == (True, "smooth conic")
    assert is_homaloidal_plane(P("(x*z - y^2)*z")) == (True, "conic + tangent")
    assert is_homaloidal_plane(P("y^2*z - x^3")) == (False, None)


def test_union_formula_examples():
    conic = P("x*z - y^2")
    assert polar_degree_union([conic, P("z")]) == 1
    assert polar_degree_union([conic, P("y")]) == 2
    assert polar_degree_union([conic, P("x*z - y^2 + z^2")]) == 2


@pytest.mark.parametrize("seed", range(6))
def test_union_formula_random(seed):
    rng = random.Random(seed)
    comps = [random_form(rng, rng.randint(1, 3)) for _ in range(2)]
    try:
        via_union = polar_degree_union(comps)
    except InputError:
        pytest.skip("components share a factor")
    assert via_union == polar_degree_plane(comps[0] * comps[1]).polar_degree


def test_genus_route():
    for text in ["y^2*z - x^3", "x^3 + y^3 + z^3", "y^2*z - x^3 - x^2*z", "y^3*z - x^4"]:
        f = P(text)
        report = polar_degree_plane(f)
        assert polar_degree_irreducible_via_genus(f, report.singular_table) == report.polar_degree


def test_projective_invariance():
    f = P("(y^2*z - x^3)*y")
    for seed in range(3):
        g = apply_change(f, CoordinateChange.random(3, seed))
        assert polar_degree_plane(g, seed).polar_degree == 2


# higher dimension


def test_coordinate_hyperplanes():
    for n in (2, 3, 4):
        xs = tuple(f"x{i}" for i in range(n + 1))
        comps = [P(v, xs) for v in xs]
        assert projective_degrees(comps) == cremona_projective_degrees(n)


def test_smooth_quadric_and_cubic():
    assert projective_degrees([P("x*y - z*w", V4)]) == [1, 1, 1]
    assert polar_degree([P("x^3 + y^3 + z^3 + w^3", V4)]) == 8


def test_cone_detection():
    assert is_cone(P("x*y - z^2", V4))
    assert not is_cone(P("x*y - z*w", V4))
    assert polar_degree([P("x*y - z^2", V4)]) == 0


def test_isolated_singularities():
    cayley = P("w*x*y + w*x*z + w*y*z + x*y*z", V4)
    pts = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    assert polar_degree_isolated(cayley, 3, pts) == 4
    assert polar_degree([cayley], singular_points=pts) == 4
    with pytest.raises(Undecided):
        polar_degree([cayley])


def test_cone_union_preserves_polar_degree():
    for text, dt in [("x*y*z", 1), ("y^2*z - x^3", 2), ("x*z - y^2", 1), ("y^2*z - x^3 - x^2*z", 3)]:
        once = cone_union_components([P(text)], seed=3)
        twice = cone_union_components(once, seed=4)
        assert polar_degree(once) == dt
        assert polar_degree(twice) == dt
    f = cone_union_construction(P("x*y*z"), seed=1)
    assert f.nvars == 4 and f.total_degree() == 4


# closed forms


@given(st.integers(1, 6), st.integers(1, 6))
def test_normal_crossings_single_component(k, n):
    assert normal_crossings_dt([k], n) == (k - 1) ** n


@given(st.integers(1, 8), st.integers(1, 5))
def test_general_position_lines(r, n):
    assert normal_crossings_dt([1] * r, n) == arrangement_dt(r, n) == (comb(r - 1, n) if r > n else 0)


@given(st.integers(1, 5), st.integers(1, 5), st.integers(1, 5))
def test_pairwise_correction(k1, k2, n):
    nc = normal_crossings_dt([k1, k2], n)
    assert nc == (k1 - 1) ** n + (k2 - 1) ** n + pairwise_correction_q(k1, k2, n)


def _alternative_equal_degree_q(k, n):
    return (k - 1) ** n * (n * k + k - 3)


@pytest.mark.xfail(strict=True, reason="(k-1)^n (nk+k-3) disagrees with the coefficient formula")
def test_alternative_equal_degree_expression():
    for k in range(1, 6):
        for n in range(1, 6):
            assert normal_crossings_dt([k, k], n) == 2 * (k - 1) ** n + _alternative_equal_degree_q(k, n)


def test_normal_crossings_matches_plane_engine():
    # transverse lines and conics
    cases = [
        (["x", "y", "z"], [1, 1, 1]),
        (["x*z - y^2", "x + y - 3*z"], [2, 1]),
        (["x*z - y^2", "x*z - 2*y^2 + 5*z^2 + x*y"], [2, 2]),
        (["x", "y", "z", "x + 2*y + 3*z"], [1, 1, 1, 1]),
    ]
    for comps, degrees in cases:
        f = P(comps[0])
        for c in comps[1:]:
            f = f * P(c)
        assert polar_degree_plane(f).polar_degree == normal_crossings_dt(degrees, 2)


def test_cremona():
    assert cremona_projective_degrees(4) == [1, 4, 6, 4]
    with pytest.raises(InputError):
        cremona_projective_degrees(0)


def test_arrangement_closed_form_needs_general_position():
    with pytest.raises(Unsupported):
        arrangement_dt(5, 3, general_position=False)
