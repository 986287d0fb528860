"""Algebraic points by dynamic evaluation.

A point with algebraic coordinates is stored as a *cluster*: a squarefree
modulus ``m(t)`` over Q together with coordinates in ``Q[t]/(m)``.  The
cluster stands for all ``deg m`` conjugate points at once.  Because ``m``
is never factored, ``Q[t]/(m)`` may be a product of fields; arithmetic
that stumbles on a zero divisor raises :class:`Split`, and the caller
re-runs the computation on each factor.

Towers ``K[y]/(h)`` over such a context are used by the branch counter
when a tangent direction is not defined over the point's own field.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from flint import fmpq, fmpq_poly

from . import upoly
from .elimination import gcd, resultant_with_chain
from .errors import CommonComponent, CrossCheckFailure, GenericityError, PositiveDimensional
from .poly import CoordinateChange, Polynomial, apply_change, to_qq

RETRIES = 12


class Split(Exception):
    """A zero divisor was met; ``factors`` are coprime and multiply to the modulus."""

    def __init__(self, context, factors):
        super().__init__(f"split of {context}")
        self.context = context
        self.factors = factors


class ShapeError(Exception):
    """A projection was not injective on the solution set; retry with a new shear."""


# ---------------------------------------------------------------------------
# base extensions Q[t]/(m)


class ExtensionContext:
    __slots__ = ("modulus",)
    level = 0

    def __init__(self, modulus: fmpq_poly):
        modulus = fmpq_poly(modulus)
        if modulus.degree() < 1:
            raise ValueError("modulus must have positive degree")
        self.modulus = modulus / modulus.coeffs()[-1]

    @classmethod
    def rational(cls) -> "ExtensionContext":
        return cls(fmpq_poly([0, 1]))

    @property
    def degree(self) -> int:
        return self.modulus.degree()

    absolute_degree = degree

    def is_squarefree(self) -> bool:
        return self.modulus.gcd(self.modulus.derivative()).degree() == 0

    def element(self, rep) -> "ExtensionElement":
        if not isinstance(rep, fmpq_poly):
            rep = fmpq_poly([to_qq(rep)])
        return ExtensionElement(rep % self.modulus, self)

    def gen(self) -> "ExtensionElement":
        return self.element(fmpq_poly([0, 1]))

    def coerce(self, x):
        if isinstance(x, ExtensionElement):
            if x.context is self:
                return x
            return ExtensionElement(x.rep % self.modulus, self)
        if isinstance(x, (int, fmpq)):
            return self.element(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self}")

    def children(self, factors) -> list["ExtensionContext"]:
        return [ExtensionContext(f) for f in factors]

    def __str__(self) -> str:
        return _show(self.modulus)

    __repr__ = __str__


def _show(p: fmpq_poly) -> str:
    return str(Polynomial.from_univariate(p, "t", ("t",)))


class ExtensionElement:
    __slots__ = ("rep", "context")

    def __init__(self, rep: fmpq_poly, context: ExtensionContext):
        self.rep = rep
        self.context = context

    def _lift(self, other):
        if isinstance(other, ExtensionElement):
            if other.context is not self.context:
                raise ValueError("elements of different contexts")
            return other.rep
        if isinstance(other, (int, fmpq)):
            return fmpq_poly([other])
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return ExtensionElement(self.rep + o, self.context)

    __radd__ = __add__

    def __neg__(self):
        return ExtensionElement(-self.rep, self.context)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return ExtensionElement(self.rep - o, self.context)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return ExtensionElement(o - self.rep, self.context)

    def __mul__(self, other):
        if isinstance(other, (int, fmpq)):
            return ExtensionElement(self.rep * other, self.context)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return ExtensionElement((self.rep * o) % self.context.modulus, self.context)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.context.element(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __bool__(self) -> bool:
        return self.rep != 0

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self.rep == o

    def __hash__(self):
        return hash(str(self.rep))

    def is_zero(self) -> bool:
        if self.rep == 0:
            return True
        g = self.rep.gcd(self.context.modulus)
        if g.degree() == 0:
            return False
        raise Split(self.context, [g, self.context.modulus / g])

    def inverse(self) -> "ExtensionElement":
        if self.rep == 0:
            raise ZeroDivisionError("inverse of zero")
        g, s, _ = self.rep.xgcd(self.context.modulus)
        if g.degree() > 0:
            raise Split(self.context, [g, self.context.modulus / g])
        return ExtensionElement(s % self.context.modulus, self.context)

    def __truediv__(self, other):
        if isinstance(other, (int, fmpq)):
            return self * (1 / fmpq(other))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def rational_value(self):
        """The value as ``fmpq`` when the representative is constant, else None."""
        if self.rep.degree() <= 0:
            return self.rep.coeffs()[0] if self.rep != 0 else fmpq(0)
        return None

    def __str__(self) -> str:
        return _show(self.rep)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# towers C[y]/(h) with h monic and squarefree over C


class TowerContext:
    __slots__ = ("base", "modulus", "level")

    def __init__(self, base, modulus: list):
        modulus = upoly.monic(modulus)
        if len(modulus) < 2:
            raise ValueError("tower modulus must have positive degree")
        self.base = base
        self.modulus = [base.coerce(c) for c in modulus]
        self.level = base.level + 1

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    @property
    def absolute_degree(self) -> int:
        return self.degree * self.base.absolute_degree

    def element(self, rep) -> "TowerElement":
        if not isinstance(rep, list):
            rep = [self.base.coerce(rep)]
        return TowerElement(upoly.rem(rep, self.modulus), self)

    def gen(self) -> "TowerElement":
        return self.element([self.base.coerce(0), self.base.coerce(1)])

    def coerce(self, x):
        if isinstance(x, TowerElement) and x.context.level == self.level:
            if x.context is self:
                return x
            return self.element([self.base.coerce(c) for c in x.rep])
        return self.element(self.base.coerce(x))

    def children(self, factors) -> list["TowerContext"]:
        return [TowerContext(self.base, f) for f in factors]

    def __str__(self) -> str:
        return f"({self.base})[y{self.level}]/({', '.join(map(str, self.modulus))})"

    __repr__ = __str__


class TowerElement:
    __slots__ = ("rep", "context")

    def __init__(self, rep: list, context: TowerContext):
        self.rep = upoly.strip(list(rep))
        self.context = context

    def _lift(self, other):
        if isinstance(other, TowerElement):
            if other.context is not self.context:
                raise ValueError("elements of different towers")
            return other.rep
        return [self.context.base.coerce(other)]

    def __add__(self, other):
        return TowerElement(upoly.add(self.rep, self._lift(other)), self.context)

    __radd__ = __add__

    def __neg__(self):
        return TowerElement(upoly.neg(self.rep), self.context)

    def __sub__(self, other):
        return TowerElement(upoly.sub(self.rep, self._lift(other)), self.context)

    def __rsub__(self, other):
        return TowerElement(upoly.sub(self._lift(other), self.rep), self.context)

    def __mul__(self, other):
        prod = upoly.mul(self.rep, self._lift(other))
        return TowerElement(upoly.rem(prod, self.context.modulus), self.context)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.context.element(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __bool__(self) -> bool:
        return bool(self.rep)

    def __eq__(self, other):
        if isinstance(other, TowerElement):
            return other.context is self.context and self.rep == other.rep
        try:
            return self.rep == upoly.strip(self._lift(other))
        except TypeError:
            return NotImplemented

    __hash__ = None

    def is_zero(self) -> bool:
        if not self.rep:
            return True
        h = self.context.modulus
        g = upoly.gcd(self.rep, h)
        if len(g) == 1:
            return False
        if len(g) == len(h):
            return True
        raise Split(self.context, [g, upoly.exquo(h, g)])

    def inverse(self) -> "TowerElement":
        if not self.rep:
            raise ZeroDivisionError("inverse of zero")
        h = self.context.modulus
        g, s, _ = upoly.xgcd(self.rep, h)
        if len(g) > 1:
            if len(g) == len(h):
                raise ZeroDivisionError("inverse of zero")
            raise Split(self.context, [g, upoly.exquo(h, g)])
        return TowerElement(upoly.rem(s, h), self.context)

    def __truediv__(self, other):
        if isinstance(other, (int, fmpq)):
            return self * (1 / fmpq(other))
        return self * other.inverse()

    def __str__(self) -> str:
        return "[" + ", ".join(map(str, self.rep)) + "]"

    __repr__ = __str__


def run_split(context, fn):
    """Evaluate ``fn(ctx)`` over every piece of ``context``.

    Returns ``[(piece, value)]``; pieces partition the original context.
    """
    work = [context]
    out = []
    while work:
        ctx = work.pop()
        try:
            out.append((ctx, fn(ctx)))
        except Split as s:
            if s.context is not ctx:
                raise
            work.extend(ctx.children(s.factors))
    return out


# ---------------------------------------------------------------------------
# points and clusters


@dataclass(frozen=True)
class AlgebraicPoint:
    chart: int
    coordinates: tuple

    @property
    def context(self):
        return self.coordinates[0].context


@dataclass(frozen=True)
class PointCluster:
    context: ExtensionContext
    coordinates: tuple

    @property
    def rational_count(self) -> int:
        return self.context.absolute_degree

    def point(self, chart: int = -1) -> AlgebraicPoint:
        return AlgebraicPoint(chart, self.coordinates)

    def restrict(self, ctx: ExtensionContext) -> "PointCluster":
        return PointCluster(ctx, tuple(ctx.coerce(c) for c in self.coordinates))

    def to_json(self) -> dict:
        return {
            "modulus": str(self.context),
            "coords": [str(c) for c in self.coordinates],
            "count": self.rational_count,
        }


def over_context(f: Polynomial, ctx, variables=None) -> Polynomial:
    """View a rational polynomial as one with coefficients in ``ctx``."""
    return Polynomial._raw(
        tuple(variables) if variables else f.variables,
        {e: ctx.coerce(c) for e, c in f.terms.items()},
    )


def evaluate_at(f: Polynomial, cluster: PointCluster):
    ctx = cluster.context
    return f.evaluate([ctx.coerce(c) for c in cluster.coordinates]) + ctx.element(0)


def partition_by_vanishing(f: Polynomial, cluster: PointCluster) -> tuple[list, list]:
    """Split a cluster into the pieces where ``f`` vanishes and where it does not."""
    value = evaluate_at(f, cluster)
    m = cluster.context.modulus
    g = value.rep.gcd(m) if value.rep != 0 else m
    zero, nonzero = [], []
    if g.degree() > 0:
        zero.append(cluster.restrict(ExtensionContext(g)))
    rest = m / g
    if rest.degree() > 0:
        nonzero.append(cluster.restrict(ExtensionContext(rest)))
    return zero, nonzero


def filter_clusters(clusters, f: Polynomial) -> list[PointCluster]:
    out = []
    for c in clusters:
        out.extend(partition_by_vanishing(f, c)[0])
    return out


def total_count(clusters) -> int:
    return sum(c.rational_count for c in clusters)


# ---------------------------------------------------------------------------
# bivariate solving


def _y_coefficients(F: Polynomial, y: str, x: str, ctx) -> list:
    return upoly.strip([ctx.element(c.to_univariate(x)) for c in F.coefficients_in(y)])


def _solve_sheared(F: Polynomial, G: Polynomial, lam: int) -> list[PointCluster]:
    x, y = F.variables
    R, chain = resultant_with_chain(F, G, y)
    if R.is_zero():
        raise PositiveDimensional("the two curves share a component")
    r = R.to_univariate(x)
    if r.degree() < 1:
        return []
    rs = r / r.gcd(r.derivative())
    # A degree-one member a*y + b of the chain is, up to a factor that can only
    # vanish where a does, the first subresultant.  Where a is a unit the fibre
    # gcd is linear, so y = -b/a; elsewhere fall back to a gcd over the piece.
    linear = next((p for p in chain if len(p) == 2), None)
    clusters = []

    def by_gcd(ctx):
        h = upoly.gcd(_y_coefficients(F, y, x, ctx), _y_coefficients(G, y, x, ctx))
        if len(h) < 2:
            raise CrossCheckFailure("a resultant root carries no common zero")
        h = upoly.squarefree_part(h)
        if len(h) != 2:
            raise ShapeError()
        return -h[0]

    def solve(ctx):
        y0 = None
        if linear is not None:
            a = ctx.element(linear[1].to_univariate(x))
            try:
                y0 = -ctx.element(linear[0].to_univariate(x)) * a.inverse()
            except ZeroDivisionError:
                y0 = None
        if y0 is None:
            y0 = by_gcd(ctx)
        return (ctx.gen() - y0 * lam, y0)

    for ctx, coords in run_split(ExtensionContext(rs), solve):
        clusters.append(PointCluster(ctx, coords))
    return clusters


def solve_bivariate(f: Polynomial, g: Polynomial, seed: int = 0, certify: bool = True) -> list[PointCluster]:
    """Distinct common zeros of two bivariate rational polynomials.

    A shear ``x -> x - lam*y`` puts the system in shape position (each
    root of the eliminant carries exactly one ``y``); this is checked, not
    assumed.  With ``certify`` a second seed must give the same count.
    """
    if f.nvars != 2 or f.variables != g.variables:
        raise ValueError("solve_bivariate expects two polynomials in the same two variables")
    if f.is_zero() or g.is_zero():
        raise PositiveDimensional("zero polynomial")
    if f.is_constant() or g.is_constant():
        return []
    if not gcd(f, g).is_constant():
        raise PositiveDimensional("the two curves share a component")
    result = _solve_seeded(f, g, seed)
    if certify:
        other = _solve_seeded(f, g, seed + 7919)
        if total_count(other) != total_count(result):
            raise GenericityError("solution counts disagree across seeds")
    return result


def _solve_seeded(f, g, seed):
    x, y = f.variables
    rng = random.Random(seed)
    X, Y = Polynomial.gens(f.variables)
    for attempt in range(RETRIES):
        lam = 0 if attempt == 0 and seed == 0 else rng.randint(-12, 12)
        sub = {x: X - lam * Y}
        F, G = f.substitute(sub), g.substitute(sub)
        if not (_constant_lead(F, y) or _constant_lead(G, y)):
            continue
        try:
            return _solve_sheared(F, G, lam)
        except ShapeError:
            continue
    raise GenericityError("no shear put the system in shape position")


def _constant_lead(F: Polynomial, y: str) -> bool:
    d = F.degree(y)
    return d > 0 and F.coefficients_in(y)[d].is_constant()


# ---------------------------------------------------------------------------
# projective intersections


def _binary_forms_coprime(F: Polynomial, G: Polynomial, z: str) -> bool:
    Fi = F.substitute({z: 0})
    Gi = G.substitute({z: 0})
    if Fi.is_zero() or Gi.is_zero():
        return False
    return gcd(Fi, Gi).is_constant()


def projective_intersection(f: Polynomial, g: Polynomial, seed: int = 0) -> tuple[CoordinateChange, list[PointCluster]]:
    """Distinct points of ``V(f) ∩ V(g)`` in P^2 after a random change.

    Returns the change ``c`` and clusters in the chart ``z = 1`` of the
    changed coordinates; no intersection point lies on ``z = 0``.
    """
    if f.nvars != 3 or f.variables != g.variables:
        raise ValueError("expected two ternary forms over the same variables")
    if not gcd(f, g).is_constant():
        raise CommonComponent("the curves share a component")
    x, y, z = f.variables
    rng = random.Random(seed)
    for attempt in range(RETRIES):
        c = CoordinateChange.identity(3) if attempt == 0 and seed == 0 else CoordinateChange.random(3, rng.randrange(1 << 30))
        F, G = apply_change(f, c), apply_change(g, c)
        if not _binary_forms_coprime(F, G, z):
            continue
        Fa = F.substitute({z: 1}).with_variables((x, y))
        Ga = G.substitute({z: 1}).with_variables((x, y))
        try:
            return c, _solve_seeded(Fa, Ga, rng.randrange(1 << 30)) if not (Fa.is_constant() or Ga.is_constant()) else []
        except GenericityError:
            continue
    raise GenericityError("no coordinate change kept the intersection affine")


def count_distinct_intersections(f: Polynomial, g: Polynomial, seed: int = 0, certify: bool = True) -> int:
    """Number of distinct points of ``V(f) ∩ V(g)`` in the projective plane."""
    n = total_count(projective_intersection(f, g, seed)[1])
    if certify:
        m = total_count(projective_intersection(f, g, seed + 104729)[1])
        if m != n:
            raise GenericityError("intersection counts disagree across seeds")
    return n
