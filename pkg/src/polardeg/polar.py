"""Polar degrees and projective degrees.

The plane engine is the reference: ``d_t = (k-1)^2 - sum of Milnor
numbers`` over a certified singular table.  Everything else (union
folding, the genus route, slicing, the closed forms for normal crossings
and arrangements) is checked against it in the test suite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb

from flint import fmpq, fmpq_mat

from .algebraic import count_distinct_intersections
from .elimination import gcd, is_squarefree, squarefree_part
from .errors import CommonComponent, GenericityError, InputError, Undecided
from .groebner import jacobian_zero_dimensional
from .local import SingularTable, geometric_genus, milnor_number_at_rational_point, singular_table
from .poly import Polynomial


@dataclass(frozen=True)
class ComponentSpec:
    polynomial: Polynomial
    asserted_irreducible: bool = False

    def __post_init__(self):
        if self.polynomial.is_zero():
            raise InputError("zero component")
        ok, _ = self.polynomial.is_homogeneous()
        if not ok:
            raise InputError(f"component {self.polynomial} is not homogeneous")


@dataclass
class PolarDegreeReport:
    degree_k: int
    polar_degree: int
    projective_degrees: list[int]
    singular_table: SingularTable | None = None
    method: str = "milnor"
    oracle_verdict: bool | None = None
    notes: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "k": self.degree_k,
            "polar_degree": self.polar_degree,
            "projective_degrees": list(self.projective_degrees),
            "method": self.method,
        }
        if self.singular_table is not None:
            out["singularities"] = self.singular_table.to_json()
        if self.oracle_verdict is not None:
            out["oracle_agrees"] = self.oracle_verdict
        out.update(self.notes)
        return out


def _as_poly(c) -> Polynomial:
    return c.polynomial if isinstance(c, ComponentSpec) else c


def _product(components) -> Polynomial:
    out = Polynomial.one(components[0].variables)
    for c in components:
        out = out * c
    return out


# ---------------------------------------------------------------------------
# plane curves


def reduced_plane_curve(f: Polynomial) -> Polynomial:
    if f.nvars != 3:
        raise InputError("a plane curve needs exactly three variables")
    if f.is_zero() or f.is_constant():
        raise InputError("zero or constant polynomial")
    ok, _ = f.is_homogeneous()
    if not ok:
        raise InputError("polynomial is not homogeneous")
    return squarefree_part(f)


def polar_degree_plane(f: Polynomial, seed: int = 0, certify: bool = True) -> PolarDegreeReport:
    """``d_t = (k-1)^2 - sum mu_p`` for the reduced curve underlying ``f``."""
    g = reduced_plane_curve(f)
    k = g.total_degree()
    table = singular_table(g, seed, certify=certify)
    dt = (k - 1) ** 2 - table.total_mu
    if dt < 0:
        raise Undecided("negative polar degree: singular table is inconsistent")
    return PolarDegreeReport(k, dt, [dt, k - 1], table, "milnor")


def plane_dt(f: Polynomial, seed: int = 0, certify: bool = False) -> int:
    return polar_degree_plane(f, seed, certify).polar_degree


def polar_degree_union(components, seed: int = 0, certify: bool = False, corrections: list | None = None) -> int:
    """Fold ``d_t(C ∪ D) = d_t(C) + d_t(D) + #(C ∩ D) - 1`` over the components."""
    comps = [_as_poly(c) for c in components]
    if not comps:
        raise InputError("no components")
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            if not gcd(comps[i], comps[j]).is_constant():
                raise CommonComponent(f"components {i} and {j} share a factor")
    acc = comps[0]
    dt = plane_dt(acc, seed, certify)
    for d in comps[1:]:
        meet = count_distinct_intersections(acc, squarefree_part(d), seed, certify=certify)
        dt = dt + plane_dt(d, seed, certify) + meet - 1
        if corrections is not None:
            corrections.append(meet - 1)
        acc = acc * d
    return dt


def polar_degree_irreducible_via_genus(f: Polynomial, table: SingularTable) -> int:
    """``k - 1 + 2 p_g + sum (r_p - 1)`` for an irreducible plane curve."""
    _, k = f.is_homogeneous()
    pg = geometric_genus(f, table)
    return k - 1 + 2 * pg + sum(rec.count * (rec.branches - 1) for rec in table.records)


_HOMALOIDAL = {
    (3, ((1, 2), (1, 2), (1, 2))): "three nonconcurrent lines",
    (2, ()): "smooth conic",
    (3, ((3, 2),)): "conic + tangent",
}


def is_homaloidal_plane(f: Polynomial, seed: int = 0) -> tuple[bool, str | None]:
    report = polar_degree_plane(f, seed)
    if report.polar_degree != 1:
        return False, None
    key = (report.degree_k, tuple(report.singular_table.spectrum()))
    label = _HOMALOIDAL.get(key)
    if label is None:
        from .errors import CrossCheckFailure

        raise CrossCheckFailure(f"homaloidal curve with unexpected data {key}")
    return True, label


# ---------------------------------------------------------------------------
# hypersurfaces in P^n


def is_cone(f: Polynomial) -> bool:
    """True iff the partial derivatives are linearly dependent (f depends on fewer variables)."""
    grad = f.gradient()
    monos = sorted({e for g in grad for e in g.terms})
    if not monos:
        return True
    m = fmpq_mat([[g.coefficient(e) for e in monos] for g in grad])
    return m.rank() < f.nvars


def polar_degree_isolated(f: Polynomial, n: int, singular_points) -> int:
    """``(k-1)^n - sum mu_p`` with the singular points supplied by the caller."""
    ok, k = f.is_homogeneous()
    if not ok:
        raise InputError("polynomial is not homogeneous")
    if f.nvars != n + 1:
        raise InputError("dimension does not match the number of variables")
    points = list(singular_points)
    smooth = jacobian_zero_dimensional(f)
    if smooth and points:
        raise InputError("the hypersurface is smooth but singular points were supplied")
    if not smooth and not points:
        raise InputError("the hypersurface is singular; supply its singular points")
    return (k - 1) ** n - sum(milnor_number_at_rational_point(f, p, n) for p in points)


def restrict_to_hyperplane(f: Polynomial, h: Polynomial) -> Polynomial:
    """Pull ``f`` back to the hyperplane ``h = 0``, eliminating its last usable variable."""
    j = max(i for i, v in enumerate(h.variables) if h.degree(v) > 0)
    var = h.variables[j]
    a = h.coefficient(tuple(int(i == j) for i in range(h.nvars)))
    rest = tuple(v for v in h.variables if v != var)
    image = Polynomial.zero(rest)
    for i, v in enumerate(h.variables):
        if i != j:
            c = h.coefficient(tuple(int(t == i) for t in range(h.nvars)))
            if c:
                image = image + Polynomial.gen(rest, v) * (-c / a)
    return f.substitute({var: image}, rest)


def reduce_components(components) -> list[Polynomial]:
    """Squarefree, pairwise coprime, nonconstant components with the same union."""
    out: list[Polynomial] = []
    for c in components:
        c = _as_poly(c)
        if c.is_zero():
            raise InputError("zero component")
        if c.is_constant():
            continue
        c = squarefree_part(c)
        for e in out:
            g = gcd(c, e)
            if not g.is_constant():
                c = c.exquo(g)
            if c.is_constant():
                break
        if not c.is_constant():
            out.append(c.primitive())
    return out


def polar_degree(components, seed: int = 0, singular_points=None) -> int:
    """Polar degree of the reduced hypersurface given as a list of factors.

    Plane curves go through the Milnor-number engine.  In higher dimension
    cones give 0, a hyperplane component ``H`` is peeled off by
    ``d_t(D' ∪ H) = d_t(D') + d_t(D' ∩ H)``, smooth hypersurfaces give
    ``(k-1)^n``, and otherwise the singular points must be supplied.
    """
    if isinstance(components, Polynomial):
        components = [components]
    comps = reduce_components(components)
    if not comps:
        return 0
    f = _product(comps)
    ok, k = f.is_homogeneous()
    if not ok:
        raise InputError("polynomial is not homogeneous")
    n = f.nvars - 1
    if n < 1:
        raise InputError("need at least two variables")
    if n == 1:
        return k - 1
    if n == 2:
        return plane_dt(f, seed)
    if is_cone(f):
        return 0
    lines = [c for c in comps if c.total_degree() == 1]
    if lines and len(comps) > 1:
        h = lines[-1]
        rest = [c for c in comps if c is not h]
        restricted = [restrict_to_hyperplane(c, h) for c in rest]
        return polar_degree(rest, seed) + polar_degree(restricted, seed)
    if singular_points is None:
        if len(comps) == 1 and jacobian_zero_dimensional(f):
            return (k - 1) ** n
        raise Undecided("singular points of a hypersurface in dimension >= 3 must be supplied")
    return polar_degree_isolated(f, n, singular_points)


def generic_slice(components, m: int, seed: int) -> list[Polynomial]:
    """Restrict every component to a seeded random linear ``P^m``."""
    comps = [_as_poly(c) for c in components]
    variables = comps[0].variables
    if m + 1 >= len(variables):
        return comps
    new = tuple(f"u{i}" for i in range(m + 1))
    rng = random.Random(seed)
    while True:
        rows = [[rng.randint(-9, 9) for _ in range(m + 1)] for _ in variables]
        if fmpq_mat(rows).rank() == m + 1:
            break
    images = {v: Polynomial.linear_form(new, rows[i]) for i, v in enumerate(variables)}
    return [c.substitute(images, new) for c in comps]


def projective_degrees(components, seed: int = 0, singular_points=None, retries: int = 8) -> list[int]:
    """``d_i = d_t(D ∩ P^{n-i})`` for ``i = 0..n-1`` with seeded generic slices."""
    if isinstance(components, Polynomial):
        components = [components]
    comps = reduce_components(components)
    n = comps[0].nvars - 1
    rng = random.Random(seed)
    out = [polar_degree(comps, seed, singular_points)]
    for i in range(1, n):
        m = n - i
        for _ in range(retries):
            sliced = generic_slice(comps, m, rng.randrange(1 << 30))
            prod = _product(sliced)
            if prod.is_zero() or prod.total_degree() != _product(comps).total_degree():
                continue
            if is_squarefree(prod):
                break
        else:
            raise GenericityError("no reduced generic slice found")
        out.append(polar_degree(sliced, seed))
    return out


# ---------------------------------------------------------------------------
# closed forms


def normal_crossings_dt(degrees, n: int) -> int:
    """Coefficient of ``h^n`` in ``(1-h)^n / prod(1 - k_i h)``."""
    if n < 1 or not degrees or any(k < 1 for k in degrees):
        raise InputError("need n >= 1 and positive degrees")
    series = [(-1) ** j * comb(n, j) for j in range(n + 1)]
    for k in degrees:
        # multiply by 1/(1 - k h) = sum k^j h^j
        acc = 0
        out = []
        for c in series:
            acc = acc * k + c
            out.append(acc)
        series = out
    return series[n]


def pairwise_correction_q(k1: int, k2: int, n: int) -> int:
    """Correction ``q`` in ``d_t(D1 ∪ D2) = d_t(D1) + d_t(D2) + q`` for normal crossings.

    For ``k1 == k2`` this is the limit of the unequal-degree expression,
    ``(k-1)^(n-1) * (n*k - k + 1)``.
    """
    if k1 < 1 or k2 < 1 or n < 1:
        raise InputError("need positive degrees and dimension")
    if k1 == k2:
        k = k1
        return (k - 1) ** (n - 1) * (n * k - k + 1)
    q, r = divmod(k2 * (k1 - 1) ** n - k1 * (k2 - 1) ** n, k1 - k2)
    if r:
        raise ArithmeticError("closed form is not integral")
    return q


def arrangement_dt(r: int, n: int, general_position: bool = True) -> int:
    """Polar degree of ``r`` hyperplanes in general position in ``P^n``."""
    from .errors import Unsupported

    if not general_position:
        raise Unsupported("closed form needs general position; use the arrangement engine")
    if r < 1 or n < 1:
        raise InputError("need r >= 1 and n >= 1")
    return comb(r - 1, n) if r >= n + 1 else 0


def cremona_projective_degrees(n: int) -> list[int]:
    if n < 1:
        raise InputError("need n >= 1")
    return [comb(n, n - i) for i in range(n)]


def cone_union_construction(f: Polynomial, seed: int = 0, name: str | None = None) -> Polynomial:
    """``cone(f) * l`` in one more variable, with ``l`` a seeded random linear form."""
    return _product(cone_union_components([f], seed, name))


def cone_union_components(components, seed: int = 0, name: str | None = None) -> list[Polynomial]:
    comps = [_as_poly(c) for c in components]
    variables = comps[0].variables
    name = name or _fresh_name(variables)
    new = variables + (name,)
    rng = random.Random(seed)
    coeffs = [0]
    while not all(coeffs):
        coeffs = [rng.randint(-9, 9) for _ in new]
    lin = Polynomial.linear_form(new, coeffs)
    return [c.with_variables(new) for c in comps] + [lin]


def _fresh_name(variables) -> str:
    i = len(variables)
    while f"w{i}" in variables:
        i += 1
    return f"w{i}"
