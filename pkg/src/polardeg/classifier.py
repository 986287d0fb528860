"""Recognition of plane curves with polar degree at most two, and the corpus.

Types are told apart by the component degrees, the singularity spectrum
and the number of distinct intersection points of pairs of components.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from flint import fmpq, fmpq_mat

from .algebraic import count_distinct_intersections
from .elimination import gcd
from .errors import CommonComponent, CrossCheckFailure, InputError
from .local import singular_table
from .poly import Polynomial, parse_polynomial
from .polar import ComponentSpec, polar_degree_irreducible_via_genus, polar_degree_plane


@dataclass(frozen=True)
class CurveDescriptor:
    component_degrees: tuple[int, ...]
    singularity_spectrum: tuple[tuple[int, int], ...]
    component_spectra: tuple[tuple[tuple[int, int], ...], ...]
    pairwise_intersection_counts: tuple[tuple[int, ...], ...]
    d_t: int

    def to_json(self) -> dict:
        return {
            "component_degrees": list(self.component_degrees),
            "singularity_spectrum": [list(p) for p in self.singularity_spectrum],
            "component_spectra": [[list(p) for p in s] for s in self.component_spectra],
            "pairwise_intersection_counts": [list(r) for r in self.pairwise_intersection_counts],
            "d_t": self.d_t,
        }


@dataclass(frozen=True)
class Label:
    d_t: int
    type: int
    name: str

    def to_json(self) -> dict:
        return {"d_t": self.d_t, "type": self.type, "name": self.name}


CONE = Label(0, 0, "cone")

DT1 = {
    1: "three nonconcurrent lines",
    2: "smooth conic",
    3: "conic + tangent",
}

DT2 = {
    1: "three concurrent lines + a line missing the center",
    2: "conic + secant",
    3: "conic + tangent + line through the point of tangency",
    4: "conic + two tangents",
    5: "two conics meeting at one point",
    6: "two conics meeting at one point + common tangent",
    7: "cuspidal cubic",
    8: "cuspidal cubic + tangent at the flex",
    9: "cuspidal cubic + tangent at the cusp",
}


def describe(components, seed: int = 0) -> CurveDescriptor:
    comps = [c.polynomial if isinstance(c, ComponentSpec) else c for c in components]
    if not comps:
        raise InputError("no components")
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            if not gcd(comps[i], comps[j]).is_constant():
                raise CommonComponent(f"components {i} and {j} share a factor")
    order = sorted(range(len(comps)), key=lambda i: comps[i].total_degree())
    comps = [comps[i] for i in order]
    f = comps[0]
    for c in comps[1:]:
        f = f * c
    report = polar_degree_plane(f, seed)
    spectra = tuple(tuple(singular_table(c, seed, certify=False).spectrum()) for c in comps)
    counts = tuple(
        tuple(0 if i == j else count_distinct_intersections(comps[i], comps[j], seed, certify=False) for j in range(len(comps)))
        for i in range(len(comps))
    )
    return CurveDescriptor(
        tuple(c.total_degree() for c in comps),
        tuple(report.singular_table.spectrum()),
        spectra,
        counts,
        report.polar_degree,
    )


def _pair_counts(d: CurveDescriptor, deg_a: int, deg_b: int) -> list[int]:
    out = []
    n = len(d.component_degrees)
    for i in range(n):
        for j in range(i + 1, n):
            if {d.component_degrees[i], d.component_degrees[j]} == {deg_a, deg_b} and (
                deg_a != deg_b or d.component_degrees[i] == d.component_degrees[j] == deg_a
            ):
                out.append(d.pairwise_intersection_counts[i][j])
    return sorted(out)


def _match_dt1(d: CurveDescriptor) -> int | None:
    degs = d.component_degrees
    if degs == (1, 1, 1) and d.singularity_spectrum == ((1, 2),) * 3:
        return 1
    if degs == (2,) and not d.singularity_spectrum:
        return 2
    if degs == (1, 2) and d.pairwise_intersection_counts[0][1] == 1:
        return 3
    return None


def _match_dt2(d: CurveDescriptor) -> int | None:
    degs = d.component_degrees
    spec = d.singularity_spectrum
    if degs == (1, 1, 1, 1) and spec == ((1, 2), (1, 2), (1, 2), (4, 3)):
        return 1
    if degs == (1, 2) and d.component_spectra[1] == () and d.pairwise_intersection_counts[0][1] == 2:
        return 2
    if degs == (1, 1, 2) and d.component_spectra[2] == ():
        line_conic = _pair_counts(d, 1, 2)
        if line_conic == [1, 2] and len(spec) == 2:
            return 3
        if line_conic == [1, 1]:
            return 4
    if degs == (2, 2) and d.component_spectra == ((), ()) and d.pairwise_intersection_counts[0][1] == 1:
        return 5
    if degs == (1, 2, 2) and _pair_counts(d, 2, 2) == [1] and _pair_counts(d, 1, 2) == [1, 1]:
        return 6
    if degs == (3,) and spec == ((2, 1),):
        return 7
    if degs == (1, 3) and d.component_spectra[1] == ((2, 1),) and d.pairwise_intersection_counts[0][1] == 1:
        if (7, 2) in spec:
            return 9
        return 8
    return None


def classify(components, seed: int = 0) -> tuple[Label | None, CurveDescriptor]:
    """Label a reduced plane curve given by its (asserted irreducible) components."""
    d = describe(components, seed)
    if d.d_t == 0:
        return CONE, d
    if d.d_t == 1:
        t = _match_dt1(d)
        if t is None:
            raise CrossCheckFailure(f"polar degree 1 but no homaloidal type matches {d.to_json()}")
        return Label(1, t, DT1[t]), d
    if d.d_t == 2:
        t = _match_dt2(d)
        if t is None:
            raise CrossCheckFailure(f"polar degree 2 but no type matches {d.to_json()}")
        return Label(2, t, DT2[t]), d
    return None, d


# ---------------------------------------------------------------------------
# corpus


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    variables: tuple[str, ...]
    components: tuple[ComponentSpec, ...]
    expected_dt: int
    label: str
    texts: tuple[str, ...] = field(default=(), compare=False)

    @property
    def equation(self) -> Polynomial:
        f = Polynomial.one(self.variables)
        for c in self.components:
            f = f * c.polynomial
        return f

    @classmethod
    def from_json(cls, data: dict) -> "CorpusEntry":
        variables = tuple(data["vars"])
        texts = tuple(data["components"])
        flags = data.get("asserted_irreducible", [False] * len(texts))
        if len(flags) != len(texts):
            raise InputError(f"corpus entry {data.get('name')!r}: flag count mismatch")
        comps = tuple(ComponentSpec(parse_polynomial(t, variables), bool(b)) for t, b in zip(texts, flags))
        return cls(data["name"], variables, comps, int(data["expected_dt"]), data.get("label", ""), texts)


def corpus_path() -> Path:
    return Path(str(resources.files("polardeg") / "data" / "corpus.jsonl"))


def load_corpus(path: str | Path | None = None) -> list[CorpusEntry]:
    p = Path(path) if path else corpus_path()
    entries = []
    for line in p.read_text().splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            entries.append(CorpusEntry.from_json(json.loads(line)))
    return entries


def verify_corpus(entries=None, seed: int = 0) -> dict:
    """Recompute d_t for every entry; irreducible ones also go through the genus route."""
    entries = load_corpus() if entries is None else entries
    rows = []
    for e in sorted(entries, key=lambda e: e.name):
        row = {"name": e.name, "label": e.label, "expected_dt": e.expected_dt}
        try:
            report = polar_degree_plane(e.equation, seed)
            row["computed_dt"] = report.polar_degree
            if len(e.components) == 1 and e.components[0].asserted_irreducible:
                row["genus_route_dt"] = polar_degree_irreducible_via_genus(
                    e.components[0].polynomial, report.singular_table
                )
            row["ok"] = row["computed_dt"] == e.expected_dt and row.get("genus_route_dt", e.expected_dt) == e.expected_dt
        except Exception as exc:  # report content, not a crash
            row["ok"] = False
            row["error"] = f"{type(exc).__name__}: {exc}"
        rows.append(row)
    failures = [r for r in rows if not r["ok"]]
    return {"entries": rows, "passed": len(rows) - len(failures), "failed": len(failures)}


# ---------------------------------------------------------------------------
# conics with six-fold contact on the cuspidal cubic


def _nullspace(rows) -> list[list[fmpq]]:
    m = fmpq_mat(rows)
    r, rank = m.rref()
    ncols = m.ncols()
    pivots = []
    for i in range(rank):
        for j in range(ncols):
            if r[i, j] != 0:
                pivots.append(j)
                break
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for fj in free:
        v = [fmpq(0)] * ncols
        v[fj] = fmpq(1)
        for i, pj in enumerate(pivots):
            v[pj] = -r[i, fj]
        basis.append(v)
    return basis


_CONIC_MONOMIALS = [(2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1)]


def _param(s, t):
    """Parametrization of ``y^2 z = x^3`` by ``(s t^2, t^3, s^3)``."""
    return (s * t**2, t**3, s**3)


def six_fold_contact_conic(s0, t0) -> list[fmpq] | None:
    """Coefficients of the conic meeting the cuspidal cubic only at ``phi(s0, t0)``, if any."""
    st = ("s", "t")
    S, T = Polynomial.gens(st)
    X, Y, Z = _param(S, T)
    columns = []
    for a, b, c in _CONIC_MONOMIALS:
        columns.append(X**a * Y**b * Z**c)
    target = (S * t0 - T * s0) ** 6
    columns.append(-target)
    rows = [[col.coefficient((6 - i, i)) for col in columns] for i in range(7)]
    null = _nullspace(rows)
    if not null:
        return None
    if len(null) > 1:
        raise CrossCheckFailure("six-fold contact conic is not unique")
    v = null[0]
    if v[6] == 0:
        raise CrossCheckFailure("a conic vanishes on the cuspidal cubic")
    return v[:6]


def conic_is_singular(q) -> bool:
    a, b, c, d, e, f = q  # x^2, y^2, z^2, xy, xz, yz
    m = fmpq_mat([[2 * a, d, e], [d, 2 * b, f], [e, f, 2 * c]])
    return m.det() == 0


def nonexistence_check_conic_cuspidal_cubic(samples: int = 20, seed: int = 0) -> dict:
    """No smooth conic meets ``y^2 z = x^3`` in a single point (sampled certification)."""
    rng = random.Random(seed)
    points = [("cusp", fmpq(1), fmpq(0)), ("flex", fmpq(0), fmpq(1))]
    while len(points) < samples + 2:
        s0 = fmpq(rng.randint(-50, 50), rng.randint(1, 50))
        t0 = fmpq(rng.randint(-50, 50), rng.randint(1, 50))
        if s0 != 0 and t0 != 0:
            points.append(("sample", s0, t0))
    rows = []
    ok = True
    for kind, s0, t0 in points:
        q = six_fold_contact_conic(s0, t0)
        status = "none" if q is None else ("singular" if conic_is_singular(q) else "smooth")
        if status == "smooth":
            ok = False
        rows.append({"kind": kind, "s": str(s0), "t": str(t0), "conic": status})
    return {"ok": ok, "points": rows}
