"""Acceptance suite: one test per criterion, exact comparisons throughout.

The terminal summary prints a PASS/FAIL line for every criterion.
"""

from __future__ import annotations

import random
from math import comb

import pytest
from flint import fmpq

import polardeg.polar as polar
from conftest import P, random_form
from polardeg.arrangements import (
    Arrangement,
    arrangement_polar_degree,
    bruno_property_check,
    is_cone,
    is_general_position,
)
from polardeg.classifier import classify, load_corpus, nonexistence_check_conic_cuspidal_cubic
from polardeg.elimination import gcd, is_squarefree
from polardeg.oracle import bezout_ledger_check, fiber_count_plane
from polardeg.poly import CoordinateChange, Polynomial, apply_change
from polardeg.polar import (
    cone_union_components,
    cremona_projective_degrees,
    is_homaloidal_plane,
    normal_crossings_dt,
    pairwise_correction_q,
    polar_degree,
    polar_degree_irreducible_via_genus,
    polar_degree_plane,
    polar_degree_union,
    projective_degrees,
)

CORPUS = load_corpus()


def _entries(prefix):
    return [e for e in CORPUS if e.label.startswith(prefix)]


def criterion(number, title):
    return pytest.mark.criterion(number, title)


@criterion(1, "homaloidal plane curves and their labels, stable under projective changes")
def test_criterion_01():
    cases = {
        "x*y*z": "three nonconcurrent lines",
        "x*z - y^2": "smooth conic",
        "(x*z - y^2)*z": "conic + tangent",
    }
    rng = random.Random(1)
    for text, label in cases.items():
        f = P(text)
        assert polar_degree_plane(f).polar_degree == 1
        assert is_homaloidal_plane(f) == (True, label)
        for _ in range(10):
            g = apply_change(f, CoordinateChange.random(3, rng.randrange(1 << 30)))
            assert polar_degree_plane(g).polar_degree == 1
            assert is_homaloidal_plane(g) == (True, label)
    # and the labels agree with the corpus classifier
    for e in _entries("dt1."):
        label, _ = classify(e.components)
        assert (label.d_t, label.type) == (1, int(e.label.split(".")[1]))


DT2_SPECTRA = {
    1: [(1, 2), (1, 2), (1, 2), (4, 3)],
    2: [(1, 2), (1, 2)],
    3: [(1, 2), (6, 3)],
    4: [(1, 2), (3, 2), (3, 2)],
    5: [(7, 2)],
    6: [(14, 3)],
    7: [(2, 1)],
    8: [(2, 1), (5, 2)],
    9: [(7, 2)],
}


@criterion(2, "all nine curve types of polar degree two, with spectra and contact counts")
def test_criterion_02():
    entries = _entries("dt2.")
    assert sorted(int(e.label.split(".")[1]) for e in entries) == list(range(1, 10))
    for e in entries:
        t = int(e.label.split(".")[1])
        report = polar_degree_plane(e.equation)
        assert report.polar_degree == 2, e.name
        assert report.singular_table.spectrum() == DT2_SPECTRA[t], e.name
        label, d = classify(e.components)
        assert (label.d_t, label.type) == (2, t), e.name
        if t in (5, 6):
            conics = [i for i, k in enumerate(d.component_degrees) if k == 2]
            assert d.pairwise_intersection_counts[conics[0]][conics[1]] == 1


@criterion(3, "polar degree three corpus, smooth cubic 4, nodal cubic 3")
def test_criterion_03():
    entries = _entries("dt3.")
    quartics = [e for e in entries if e.label.startswith("dt3.quartic")]
    assert len(quartics) == 5
    assert all(e.equation.total_degree() == 4 and len(e.components) == 1 for e in quartics)
    for e in entries:
        assert polar_degree_plane(e.equation).polar_degree == 3, e.name
    assert polar_degree_plane(P("y^2*z - x^3 - x*z^2 - z^3")).polar_degree == 4
    assert polar_degree_plane(P("x^3 + y^3 + z^3")).polar_degree == 4
    assert polar_degree_plane(P("y^2*z - x^3 - x^2*z")).polar_degree == 3


@criterion(4, "Milnor route equals genus route on irreducible corpus curves")
def test_criterion_04():
    checked = 0
    for e in CORPUS:
        if len(e.components) != 1 or not e.components[0].asserted_irreducible:
            continue
        f = e.components[0].polynomial
        report = polar_degree_plane(f)
        assert polar_degree_irreducible_via_genus(f, report.singular_table) == report.polar_degree, e.name
        checked += 1
    assert checked >= 8


def _coprime_components(rng):
    while True:
        comps = [random_form(rng, rng.randint(1, 3), density=0.5) for _ in range(rng.randint(2, 3))]
        if not all(is_squarefree(c) for c in comps):
            continue
        if any(not gcd(a, b).is_constant() for i, a in enumerate(comps) for b in comps[i + 1 :]):
            continue
        return comps


@criterion(5, "union formula on 200 random products of coprime components")
def test_criterion_05():
    rng = random.Random(2024)
    for _ in range(200):
        comps = _coprime_components(rng)
        f = comps[0]
        for c in comps[1:]:
            f = f * c
        assert polar_degree_union(comps) == polar_degree_plane(f, certify=False).polar_degree, [str(c) for c in comps]


def _oracle_agrees(f, expected):
    report = polar_degree_plane(f)
    assert report.polar_degree == expected, str(f)
    for s in range(3):
        r = fiber_count_plane(f, s)
        if r.degenerate:
            assert report.polar_degree == 0, str(f)
        else:
            assert report.polar_degree != 0, str(f)
            assert r.fiber_count == report.polar_degree, (str(f), s)
            assert bezout_ledger_check(f, r, report.singular_table), (str(f), s)


@criterion(6, "fiber count oracle and Bezout ledger on the corpus and 100 random curves")
def test_criterion_06():
    for e in CORPUS:
        _oracle_agrees(e.equation, e.expected_dt)
    rng = random.Random(77)
    done = 0
    while done < 100:
        f = random_form(rng, rng.randint(1, 5), density=rng.choice([0.3, 0.5]))
        if not is_squarefree(f):
            continue
        _oracle_agrees(f, polar_degree_plane(f).polar_degree)
        done += 1


@criterion(7, "projective degrees of the standard Cremona map")
def test_criterion_07():
    for n in range(1, 7):
        assert cremona_projective_degrees(n) == [comb(n, n - i) for i in range(n)]
    for n in (2, 3):
        variables = tuple(f"x{i}" for i in range(n + 1))
        hyperplanes = list(Polynomial.gens(variables))
        assert projective_degrees(hyperplanes, seed=5) == cremona_projective_degrees(n)


@criterion(8, "normal crossings coefficient formula and the pairwise closed form")
def test_criterion_08():
    for k in range(1, 7):
        for n in range(1, 7):
            assert normal_crossings_dt([k], n) == (k - 1) ** n
    transverse = [
        (["x", "y", "z"], [1, 1, 1]),
        (["x", "y", "z", "x + 2*y + 3*z"], [1, 1, 1, 1]),
        (["x*z - y^2", "x + y - 3*z"], [2, 1]),
        (["x*z - y^2", "x*z - 2*y^2 + 5*z^2 + x*y"], [2, 2]),
        (["x*z - y^2", "x + y - 3*z", "x - 2*y + 5*z"], [2, 1, 1]),
    ]
    for comps, degrees in transverse:
        f = P(comps[0])
        for c in comps[1:]:
            f = f * P(c)
        assert polar_degree_plane(f).polar_degree == normal_crossings_dt(degrees, 2), comps
    for k1 in range(1, 6):
        for k2 in range(1, 6):
            for n in range(1, 6):
                lhs = normal_crossings_dt([k1, k2], n)
                assert lhs == (k1 - 1) ** n + (k2 - 1) ** n + pairwise_correction_q(k1, k2, n), (k1, k2, n)


@criterion(9, "cone-and-hyperplane construction preserves the polar degree, once and twice")
def test_criterion_09():
    for i, e in enumerate(CORPUS):
        comps = [c.polynomial for c in e.components]
        once = cone_union_components(comps, seed=i)
        twice = cone_union_components(once, seed=i + 100)
        assert polar_degree(once) == e.expected_dt, e.name
        assert polar_degree(twice) == e.expected_dt, e.name


def _hand_built():
    def arr(n, rows):
        return Arrangement(tuple(tuple(fmpq(c) for c in r) for r in rows), n)

    return [
        (arr(2, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]), 1),
        (arr(2, [(1, 0, 0), (0, 1, 0), (1, 1, 0)]), 0),
        (arr(2, [(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)]), 2),
        (arr(2, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]), 3),
        (arr(2, [(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, -1, 0), (0, 0, 1)]), 3),
        (arr(3, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]), 1),
        (arr(3, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (1, 1, 1, 0)]), 0),
        (arr(3, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, 1, 1, 1)]), 4),
    ]


@criterion(10, "arrangements: homaloidal only for n+1 hyperplanes in general position")
def test_criterion_10():
    for n in (2, 3):
        result = bruno_property_check(n, n + 4, seed=n, trials=50)
        assert result["ok"], result["counterexamples"]
    for a, expected in _hand_built():
        d = arrangement_polar_degree(a)
        assert d == expected
        assert (d == 1) == (a.r == a.n + 1 and is_general_position(a))
        assert (d == 0) == is_cone(a)
        if a.r >= a.n + 2 and not is_cone(a):
            assert d >= 2


@criterion(11, "no smooth conic meets the cuspidal cubic at a single point (sampled)")
def test_criterion_11():
    result = nonexistence_check_conic_cuspidal_cubic(samples=20, seed=0)
    assert len(result["points"]) == 22
    assert {p["kind"] for p in result["points"][:2]} == {"cusp", "flex"}
    assert result["ok"]


@criterion(12, "excluded routes are documented; substitute suites are present")
def test_criterion_12():
    # the Euler characteristic and Chern class routes and the existence construction are not
    # implemented; the union, oracle, cone and arrangement suites above stand in for them
    for name in ("euler_characteristic_dt", "chern_class_dt", "homaloidal_hypersurface"):
        assert not hasattr(polar, name)
    for fn in (polar_degree_union, fiber_count_plane, cone_union_components, bruno_property_check):
        assert callable(fn)
    print("criterion 12: excluded by design, covered by criteria 5, 6, 9 and 10")
