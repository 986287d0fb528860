"""Polar degrees of hyperplane arrangements."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb

from flint import fmpq, fmpq_mat

from .errors import CrossCheckFailure, InputError, Unsupported
from .poly import Polynomial
from .polar import polar_degree_plane


def _coefficients(form: Polynomial) -> list[fmpq]:
    ok, k = form.is_homogeneous()
    if not ok or k != 1:
        raise InputError(f"not a linear form: {form}")
    n = form.nvars
    return [form.coefficient(tuple(int(i == j) for i in range(n))) for j in range(n)]


def _normalized(v) -> tuple[fmpq, ...]:
    lead = next(c for c in v if c != 0)
    return tuple(c / lead for c in v)


def _rank(vectors) -> int:
    if not vectors:
        return 0
    return fmpq_mat([list(v) for v in vectors]).rank()


@dataclass(frozen=True)
class Arrangement:
    """Distinct hyperplanes of ``P^n``, stored as coefficient vectors of length ``n+1``."""

    vectors: tuple[tuple[fmpq, ...], ...]
    n: int
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        if any(len(v) != self.n + 1 for v in self.vectors):
            raise InputError("form length does not match the dimension")
        if any(all(c == 0 for c in v) for v in self.vectors):
            raise InputError("zero linear form")
        seen = set()
        for v in self.vectors:
            key = _normalized(v)
            if key in seen:
                raise InputError("repeated hyperplane")
            seen.add(key)

    @classmethod
    def from_forms(cls, forms) -> "Arrangement":
        forms = list(forms)
        if not forms:
            raise InputError("empty arrangement")
        return cls(tuple(tuple(_coefficients(f)) for f in forms), forms[0].nvars - 1, forms[0].variables)

    @property
    def r(self) -> int:
        return len(self.vectors)

    def variables(self) -> tuple[str, ...]:
        if self.names is not None:
            return self.names
        if self.n == 2:
            return ("x", "y", "z")
        return tuple(f"x{i}" for i in range(self.n + 1))

    def forms(self) -> list[Polynomial]:
        vs = self.variables()
        return [Polynomial.linear_form(vs, v) for v in self.vectors]

    def restrict(self, h) -> "Arrangement":
        """Trace of the arrangement on the hyperplane ``h`` (not itself a member)."""
        j = max(i for i, c in enumerate(h) if c != 0)
        out: dict[tuple, tuple] = {}
        for v in self.vectors:
            w = [v[i] - v[j] / h[j] * h[i] for i in range(self.n + 1) if i != j]
            if all(c == 0 for c in w):
                raise InputError("restricting to a member hyperplane")
            out.setdefault(_normalized(w), tuple(w))
        return Arrangement(tuple(out.values()), self.n - 1)


def is_general_position(a: Arrangement) -> bool:
    m = min(a.r, a.n + 1)
    return all(_rank(s) == m for s in combinations(a.vectors, m))


def is_cone(a: Arrangement) -> bool:
    return _rank(a.vectors) < a.n + 1


def _peel(a: Arrangement, seed: int) -> int:
    """``d_t(D' + H) = d_t(D') + d_t(D'|H)``, starting from a single hyperplane."""
    total = 0
    for i in range(1, a.r):
        sub = Arrangement(a.vectors[:i], a.n)
        total += arrangement_polar_degree(sub.restrict(a.vectors[i]), seed)
    return total


def arrangement_polar_degree(a: Arrangement, seed: int = 0) -> int:
    if is_cone(a):
        return 0
    if is_general_position(a):
        return comb(a.r - 1, a.n)
    if a.n == 1:
        return a.r - 1
    if a.n == 2:
        f = Polynomial.one(a.variables())
        for g in a.forms():
            f = f * g
        return polar_degree_plane(f, seed, certify=False).polar_degree
    if a.n == 3:
        forward = _peel(a, seed)
        backward = _peel(Arrangement(a.vectors[::-1], a.n), seed)
        if forward != backward:
            raise CrossCheckFailure(f"hyperplane order changed the polar degree: {forward} vs {backward}")
        return forward
    raise Unsupported("arrangements not in general position are supported up to n = 3")


def peel_polar_degree(a: Arrangement, seed: int = 0) -> int:
    """Polar degree by repeated restriction down to points on a line, for any ``n``."""
    if a.n == 1:
        return a.r - 1
    total = 0
    for i in range(1, a.r):
        sub = Arrangement(a.vectors[:i], a.n)
        total += peel_polar_degree(sub.restrict(a.vectors[i]), seed)
    return total


def random_arrangement(n: int, r: int, rng: random.Random, bound: int = 20, tries: int = 1000) -> Arrangement:
    vectors: list[tuple[fmpq, ...]] = []
    seen = set()
    for attempt in range(tries):
        if len(vectors) == r:
            break
        if attempt and attempt % 50 == 0:
            bound *= 2
        v = tuple(fmpq(rng.randint(-bound, bound)) for _ in range(n + 1))
        if all(c == 0 for c in v):
            continue
        key = _normalized(v)
        if key not in seen:
            seen.add(key)
            vectors.append(v)
    return Arrangement(tuple(vectors), n)


def bruno_property_check(n: int, r_max: int, seed: int = 0, trials: int = 40) -> dict:
    """Randomized check that only ``n+1`` hyperplanes in general position are homaloidal."""
    if n > 3:
        raise Unsupported("the check runs for n <= 3")
    rng = random.Random(seed)
    counterexamples = []
    homaloidal = 0
    for _ in range(trials):
        r = rng.randint(1, r_max)
        # small coefficients produce coincidences often enough to exercise the degenerate cases
        bound = rng.choice([1, 2, 20])
        a = random_arrangement(n, r, rng, bound)
        d = arrangement_polar_degree(a, seed)
        gp = is_general_position(a)
        cone = is_cone(a)
        if d == 1:
            homaloidal += 1
        bad = []
        if (d == 1) != (r == n + 1 and gp):
            bad.append("homaloidal iff n+1 in general position")
        if r >= n + 2 and not cone and d < 2:
            bad.append("d_t >= 2 past n+1 hyperplanes")
        if cone and d != 0:
            bad.append("cone has d_t = 0")
        if bad:
            counterexamples.append({"forms": [str(f) for f in a.forms()], "d_t": d, "failed": bad})
    return {
        "n": n,
        "r_max": r_max,
        "trials": trials,
        "homaloidal": homaloidal,
        "counterexamples": counterexamples,
        "ok": not counterexamples,
    }
