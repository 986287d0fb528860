"""Brute-force polar degrees of plane curves by counting one fiber.

For a target ``(a:b:c)`` with ``c != 0`` the fiber of the polar map is
cut out by the two minors ``c*f_x - a*f_z`` and ``c*f_y - b*f_z``.  Their
common zeros are the fiber plus the points where the whole gradient
vanishes, and those are exactly the zeros with ``f_z = 0``.  Nothing here
uses Milnor numbers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from flint import fmpq

from .algebraic import partition_by_vanishing, projective_intersection
from .elimination import gcd, is_squarefree
from .errors import GenericityError, InputError, NotReduced
from .local import SingularTable
from .poly import Polynomial, apply_change

HEIGHT = 1000


@dataclass(frozen=True)
class FiberCountResult:
    target: tuple[fmpq, fmpq, fmpq]
    distinct_common_zeros: int
    singular_point_count: int
    fiber_count: int
    degenerate: bool

    def to_json(self) -> dict:
        return {
            "target": [str(c) for c in self.target],
            "distinct_common_zeros": self.distinct_common_zeros,
            "singular_point_count": self.singular_point_count,
            "fiber_count": self.fiber_count,
            "degenerate": self.degenerate,
        }


def _random_rational(rng: random.Random) -> fmpq:
    return fmpq(rng.randint(-HEIGHT, HEIGHT), rng.randint(1, HEIGHT))


def random_target(seed: int) -> tuple[fmpq, fmpq, fmpq]:
    rng = random.Random(seed)
    c = fmpq(0)
    while c == 0:
        c = _random_rational(rng)
    return _random_rational(rng), _random_rational(rng), c


def hessian_determinant(f: Polynomial) -> Polynomial:
    h = [[f.derivative(u).derivative(v) for v in f.variables] for u in f.variables]
    return (
        h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1])
        - h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0])
        + h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0])
    )


def _check_input(f: Polynomial) -> int:
    if f.nvars != 3:
        raise InputError("the oracle works on plane curves only")
    ok, k = f.is_homogeneous()
    if not ok:
        raise InputError("polynomial is not homogeneous")
    if k < 1:
        raise InputError("constant polynomial")
    if not is_squarefree(f):
        raise NotReduced("curve has a multiple component")
    return k


def fiber_count_plane(f: Polynomial, seed: int = 0) -> FiberCountResult:
    """Count the fiber of the polar map over one seeded random target."""
    k = _check_input(f)
    target = random_target(seed)
    if k == 1 or hessian_determinant(f).is_zero():
        return FiberCountResult(target, 0, 0, 0, True)
    a, b, c = target
    fx, fy, fz = f.gradient()
    g1 = fx * c - fz * a
    g2 = fy * c - fz * b
    if g1.is_zero() or g2.is_zero() or not gcd(g1, g2).is_constant():
        return FiberCountResult(target, 0, 0, 0, True)
    change, clusters = projective_intersection(g1, g2, seed)
    x, y, z = f.variables
    fz_affine = apply_change(fz, change).substitute({z: 1}).with_variables((x, y))
    fiber = base = 0
    for cl in clusters:
        zero, nonzero = partition_by_vanishing(fz_affine, cl)
        base += sum(p.rational_count for p in zero)
        fiber += sum(p.rational_count for p in nonzero)
    return FiberCountResult(target, fiber + base, base, fiber, False)


def oracle_polar_degree(f: Polynomial, seed: int = 0, seeds: int = 2, retries: int = 6) -> FiberCountResult:
    """Fiber count certified by agreement over ``seeds`` consecutive seeds."""
    results = []
    for i in range(seeds + retries):
        results.append(fiber_count_plane(f, seed + i))
        tail = results[-seeds:]
        if len(tail) == seeds and len({(r.fiber_count, r.degenerate) for r in tail}) == 1:
            return tail[0]
    raise GenericityError("fiber counts never agreed across seeds")


def bezout_ledger_check(f: Polynomial, result: FiberCountResult, table: SingularTable) -> bool:
    """``fiber + sum mu = (k-1)^2``; meaningful for non-degenerate results only."""
    if result.degenerate:
        raise InputError("the Bezout ledger needs a non-degenerate fiber")
    _, k = f.is_homogeneous()
    return result.fiber_count + table.total_mu == (k - 1) ** 2
