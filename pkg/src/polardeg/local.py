"""Local invariants of plane curve germs and the singular table of a curve.

Intersection multiplicities use the classical axiomatic recursion on
``(f(x,0), g(x,0))``.  Branch counts and delta invariants come from a
blow-up recursion: each blow-up adds ``m(m-1)/2`` to delta, and simple
tangent directions close off smooth branches.  All arithmetic runs over
an algebraic context and may raise :class:`~polardeg.algebraic.Split`.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field

from flint import fmpq

from . import upoly
from .algebraic import (
    ExtensionContext,
    PointCluster,
    Split,
    TowerContext,
    filter_clusters,
    over_context,
    run_split,
    solve_bivariate,
)
from .elimination import gcd, is_squarefree
from .errors import (
    CrossCheckFailure,
    GenericityError,
    InfiniteMultiplicity,
    InputError,
    NonIsolatedSingularity,
    NotReduced,
    PositiveDimensional,
    Undecided,
)
from .groebner import quotient_dimension
from .poly import CoordinateChange, Polynomial, apply_change
from .upoly import czero

DEFAULT_BLOWUP_DEPTH = 32


def blowup_depth() -> int:
    return int(os.environ.get("POLARDEG_BLOWUP_DEPTH", DEFAULT_BLOWUP_DEPTH))


# ---------------------------------------------------------------------------
# germs as dicts {(i, j): c} in local coordinates (x, y) centred at 0


def _germ(f: Polynomial, point, ctx) -> dict:
    """Translate a bivariate polynomial so that ``point`` is the origin."""
    x, y = f.variables
    X, Y = Polynomial.gens(f.variables)
    fk = over_context(f, ctx)
    a, b = (ctx.coerce(c) for c in point)
    moved = fk.substitute({x: X + Polynomial.constant(f.variables, a), y: Y + Polynomial.constant(f.variables, b)})
    return dict(moved.terms)


def _axis(F: dict) -> list:
    """Coefficient list of ``F(x, 0)``."""
    d = max((i for (i, j) in F if j == 0), default=-1)
    out = [0] * (d + 1)
    for (i, j), c in F.items():
        if j == 0:
            out[i] = c
    return out


def _sub_scaled(G: dict, F: dict, c, shift: int) -> dict:
    out = dict(G)
    for (i, j), a in F.items():
        k = (i + shift, j)
        v = out.get(k, 0) - c * a
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _fulton(F: dict, G: dict, bound: int) -> int:
    total = 0
    while True:
        if total > bound:
            raise CrossCheckFailure("local intersection number exceeds the Bezout bound")
        if not F or not G:
            raise InfiniteMultiplicity("a germ vanishes identically")
        if not czero(F.get((0, 0), 0)) or not czero(G.get((0, 0), 0)):
            return total
        pf = upoly.normalize(_axis(F))
        pg = upoly.normalize(_axis(G))
        if not pf and not pg:
            raise InfiniteMultiplicity("both germs contain the x-axis")
        if not pf:
            F, G, pf, pg = G, F, pg, pf
        if not pg:
            # G = y * H: I(F, G) = I(F, y) + I(F, H)
            total += next(i for i, c in enumerate(pf) if not czero(c))
            G = {(i, j - 1): c for (i, j), c in G.items() if j > 0}
            continue
        if len(pf) > len(pg):
            F, G, pf, pg = G, F, pg, pf
        shift = len(pg) - len(pf)
        G = _sub_scaled(G, F, pg[-1] * upoly.cinv(pf[-1]), shift)
        # with I(F, G) <= N, terms of order > N lie in m*(F, G) and do not change the local ideal
        cap = bound - total
        G = {e: c for e, c in G.items() if e[0] + e[1] <= cap}
        F = {e: c for e, c in F.items() if e[0] + e[1] <= cap}


def intersection_multiplicity(f: Polynomial, g: Polynomial, point, context=None) -> int:
    """Local intersection number of two affine plane curves at ``point``.

    ``point`` is a pair of coordinates (rationals or elements of
    ``context``).  Splitting of the context is the caller's business.
    """
    ctx = context if context is not None else _context_of(point)
    h = gcd(f, g)
    if not h.is_constant():
        # a common component is defined over Q; it is a local unit unless it passes through the point
        if over_context(h, ctx).evaluate([ctx.coerce(c) for c in point]).is_zero():
            raise InfiniteMultiplicity("the curves share a component through the point")
        f, g = f.exquo(h), g.exquo(h)
    bound = f.total_degree() * g.total_degree()
    return _fulton(_germ(f, point, ctx), _germ(g, point, ctx), bound)


def _context_of(point):
    for c in point:
        if hasattr(c, "context"):
            return c.context
    return ExtensionContext.rational()


def milnor_number(f: Polynomial, point, context=None) -> int:
    """Milnor number of an affine plane curve at ``point``, as ``I(f_x, f_y)``."""
    x, y = f.variables
    try:
        return intersection_multiplicity(f.derivative(x), f.derivative(y), point, context)
    except InfiniteMultiplicity as e:
        raise NonIsolatedSingularity(f"critical point is not isolated: {e}") from None


# ---------------------------------------------------------------------------
# blow-up recursion


def _order(F: dict) -> int:
    for d in range(0, max((i + j for i, j in F), default=-1) + 1):
        if any(i + j == d and not czero(c) for (i, j), c in F.items()):
            return d
    raise InfiniteMultiplicity("germ vanishes identically")


def _shear(F: dict, c: int) -> dict:
    """Substitute ``x -> x + c*y``."""
    from math import comb

    out: dict = {}
    for (i, j), a in F.items():
        for k in range(i + 1):
            coeff = a * (comb(i, k) * c ** (i - k))
            key = (k, j + i - k)
            v = out.get(key, 0) + coeff
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def _translate_y(F: dict, a) -> dict:
    """Substitute ``y -> y + a``."""
    from math import comb

    out: dict = {}
    powers = {0: 1}
    for (i, j), c in F.items():
        for k in range(j + 1):
            if (j - k) not in powers:
                p = 1
                for _ in range(j - k):
                    p = p * a
                powers[j - k] = p
            term = c * powers[j - k] * comb(j, k)
            if not term:
                continue
            key = (i, k)
            v = out.get(key, 0) + term
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def _coerce_germ(F: dict, ctx) -> dict:
    return {e: ctx.coerce(c) for e, c in F.items()}


def _branches(F: dict, ctx, depth: int) -> tuple[int, int]:
    """Return ``(r, delta)`` of the germ ``F`` at the origin over ``ctx``."""
    m = _order(F)
    if m == 0:
        raise ValueError("germ does not pass through the origin")
    if m == 1:
        return 1, 0
    if depth > blowup_depth():
        raise Undecided(f"blow-up depth cap {blowup_depth()} reached")
    for c in range(0, m + 2):
        G = _shear(F, c) if c else F
        if not czero(G.get((0, m), 0)):
            F = G
            break
    else:
        raise CrossCheckFailure("no shear makes the y-direction non-tangent")
    # strict transform in the chart y = x * y1
    F1: dict = {}
    for (i, j), a in F.items():
        if i + j >= m and a:
            F1[(i + j - m, j)] = a
    tau = [0] * (m + 1)
    for (i, j), a in F1.items():
        if i == 0:
            tau[j] = a
    r = 0
    delta = m * (m - 1) // 2
    for phi, e in upoly.squarefree_decomposition(tau):
        deg = len(phi) - 1
        if e == 1:
            r += deg
            continue
        if deg == 1:
            sub_r, sub_d = _branches(_translate_y(F1, -phi[0]), ctx, depth + 1)
            r += sub_r
            delta += sub_d
            continue
        tower = TowerContext(ctx, phi)
        for piece, (sub_r, sub_d) in run_split(
            tower, lambda T: _branches(_translate_y(_coerce_germ(F1, T), T.gen()), T, depth + 1)
        ):
            r += piece.degree * sub_r
            delta += piece.degree * sub_d
    return r, delta


def branch_count_and_delta(f: Polynomial, point, context=None) -> tuple[int, int]:
    ctx = context if context is not None else _context_of(point)
    F = _germ(f, point, ctx)
    if not czero(F.get((0, 0), 0)):
        raise ValueError("point is not on the curve")
    return _branches(F, ctx, 0)


def branch_count(f: Polynomial, point, context=None) -> int:
    return branch_count_and_delta(f, point, context)[0]


def delta_invariant(mu: int, r: int) -> int:
    if mu < 0 or r < 1 or (mu + r - 1) % 2:
        raise CrossCheckFailure(f"inconsistent local invariants mu={mu}, r={r}")
    return (mu + r - 1) // 2


# ---------------------------------------------------------------------------
# higher dimension: Milnor numbers at rational points


def milnor_number_at_rational_point(f: Polynomial, point, n: int | None = None) -> int:
    """Local Milnor number of a projective hypersurface at a rational point.

    Computes ``dim Q[x]/(J + m^N)`` for growing ``N``; two equal
    consecutive values certify ``m^N ⊂ J`` locally.  A value above
    ``(k-1)^n`` proves the singularity is not isolated.
    """
    n = f.nvars - 1 if n is None else n
    if f.nvars != n + 1:
        raise InputError("dimension does not match the number of variables")
    ok, k = f.is_homogeneous()
    if not ok:
        raise InputError("polynomial is not homogeneous")
    p = [fmpq(c) if not isinstance(c, fmpq) else c for c in point]
    if len(p) != n + 1 or all(c == 0 for c in p):
        raise InputError("bad projective point")
    if f.evaluate(p) != 0 or any(g.evaluate(p) != 0 for g in f.gradient()):
        raise InputError(f"point {[str(c) for c in p]} is not a singular point")
    i = next(j for j, c in enumerate(p) if c != 0)
    p = [c / p[i] for c in p]
    local_vars = tuple(v for j, v in enumerate(f.variables) if j != i)
    images = {}
    for j, v in enumerate(f.variables):
        if j == i:
            images[v] = Polynomial.one(local_vars)
        else:
            images[v] = Polynomial.gen(local_vars, v) + p[j]
    g = f.substitute(images, local_vars)
    jac = [g.derivative(v) for v in local_vars]
    bound = (k - 1) ** n
    prev = None
    N = 1
    while True:
        dim = quotient_dimension(jac, truncate=N)
        if dim > bound:
            raise NonIsolatedSingularity("singular locus is positive dimensional at the point")
        if dim == prev:
            return dim
        prev = dim
        N += 1


# ---------------------------------------------------------------------------
# singular tables


@dataclass(frozen=True)
class SingularityRecord:
    point: PointCluster
    mu: int
    branches: int
    delta: int

    @property
    def count(self) -> int:
        return self.point.rational_count

    def to_json(self) -> dict:
        return {
            "point": {"modulus": str(self.point.context), "coords": [str(c) for c in self.point.coordinates]},
            "count": self.count,
            "mu": self.mu,
            "r": self.branches,
            "delta": self.delta,
        }


@dataclass(frozen=True)
class SingularTable:
    curve: Polynomial
    records: tuple[SingularityRecord, ...] = field(default_factory=tuple)

    @property
    def total_mu(self) -> int:
        return sum(r.count * r.mu for r in self.records)

    @property
    def total_delta(self) -> int:
        return sum(r.count * r.delta for r in self.records)

    @property
    def point_count(self) -> int:
        return sum(r.count for r in self.records)

    def spectrum(self) -> list[tuple[int, int]]:
        """Sorted multiset of ``(mu, r)`` over geometric points."""
        out = []
        for rec in self.records:
            out.extend([(rec.mu, rec.branches)] * rec.count)
        return sorted(out)

    def to_json(self) -> list[dict]:
        return [r.to_json() for r in self.records]


def _forms_share_root(forms: list[Polynomial]) -> bool:
    g = Polynomial.zero(forms[0].variables)
    for h in forms:
        g = gcd(g, h)
        if g.is_constant() and not g.is_zero():
            return False
    return True


def singular_clusters(f: Polynomial, seed: int = 0):
    """Singular points of a reduced plane curve as clusters in a generic chart.

    Returns ``(change, clusters, affine_curve)``: ``change`` is the
    coordinate change applied, clusters live in its chart ``z = 1``.
    """
    x, y, z = f.variables
    rng = random.Random(seed)
    for attempt in range(12):
        if attempt == 0 and seed == 0:
            c = CoordinateChange.identity(3)
        else:
            c = CoordinateChange.random(3, rng.randrange(1 << 30))
        F = apply_change(f, c)
        grad = F.gradient()
        if _forms_share_root([g.substitute({z: 0}) for g in grad]):
            continue
        affine = [h.substitute({z: 1}).with_variables((x, y)) for h in [F] + grad]
        fa, gx, gy, gz = affine
        if gx.is_zero() or gy.is_zero():
            continue
        if gx.is_constant() or gy.is_constant():
            return c, [], fa
        try:
            clusters = solve_bivariate(gx, gy, seed=rng.randrange(1 << 30), certify=False)
        except (PositiveDimensional, GenericityError):
            continue
        return c, filter_clusters(clusters, gz), fa
    raise GenericityError("no chart kept every singular point affine")


def _local_record(fa: Polynomial, cluster: PointCluster) -> list[tuple[PointCluster, int, int, int]]:
    x, y = fa.variables
    gx, gy = fa.derivative(x), fa.derivative(y)
    hessian = gx.derivative(x) * gy.derivative(y) - gx.derivative(y) ** 2

    def compute(ctx):
        pt = tuple(ctx.coerce(c) for c in cluster.coordinates)
        # ordinary double points (Morse critical points) are by far the common case
        if not over_context(hessian, ctx).evaluate(pt).is_zero():
            return 1, 2, 1
        mu = intersection_multiplicity(gx, gy, pt, ctx)
        r, delta = branch_count_and_delta(fa, pt, ctx)
        return mu, r, delta

    return [(cluster.restrict(ctx), *vals) for ctx, vals in run_split(cluster.context, compute)]


def _to_original(cluster: PointCluster, change: CoordinateChange) -> PointCluster:
    ctx = cluster.context
    v = [ctx.coerce(c) for c in cluster.coordinates] + [ctx.element(1)]
    M = change.matrix
    coords = []
    for i in range(3):
        acc = ctx.element(0)
        for j in range(3):
            acc = acc + v[j] * M[i, j]
        coords.append(acc)
    return PointCluster(ctx, tuple(coords))


def singular_table(f: Polynomial, seed: int = 0, certify: bool = True) -> SingularTable:
    """Complete table of singular points of a reduced plane curve.

    Each record's Milnor number is cross-checked against the blow-up data
    by ``mu = 2*delta - r + 1``.  With ``certify`` a second seed must
    reproduce the point count and the ``(mu, r)`` spectrum.
    """
    _check_plane_curve(f)
    table = _table_seeded(f, seed)
    if certify:
        other = _table_seeded(f, seed + 15485863)
        if other.spectrum() != table.spectrum():
            raise GenericityError("singular tables disagree across seeds")
    return table


def _check_plane_curve(f: Polynomial) -> None:
    if f.nvars != 3:
        raise InputError("a plane curve needs exactly three variables")
    if f.is_zero() or f.is_constant():
        raise InputError("zero or constant polynomial")
    ok, _ = f.is_homogeneous()
    if not ok:
        raise InputError("polynomial is not homogeneous")
    if not is_squarefree(f):
        raise NotReduced("curve has a multiple component; pass its squarefree part")


def _table_seeded(f: Polynomial, seed: int) -> SingularTable:
    change, clusters, fa = singular_clusters(f, seed)
    records = []
    for cl in clusters:
        for piece, mu, r, delta in _local_record(fa, cl):
            if mu < 1:
                raise CrossCheckFailure("a singular point has Milnor number 0")
            if mu != 2 * delta - r + 1:
                raise CrossCheckFailure(f"Milnor formula fails: mu={mu}, r={r}, delta={delta}")
            records.append(SingularityRecord(_to_original(piece, change), mu, r, delta))
    records.sort(key=lambda rec: (rec.mu, rec.branches, rec.count, str(rec.point.coordinates)))
    return SingularTable(f, tuple(records))


def geometric_genus(f: Polynomial, table: SingularTable) -> int:
    """Genus of the normalization of an irreducible plane curve."""
    _, k = f.is_homogeneous()
    g = (k - 1) * (k - 2) // 2 - table.total_delta
    if g < 0:
        raise InputError("negative genus: the curve is not irreducible")
    return g
