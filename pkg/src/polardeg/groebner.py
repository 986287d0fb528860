"""A small Buchberger engine in graded reverse lexicographic order.

Internally polynomials are plain ``{exponent: fmpq}`` dicts.  A step budget
bounds the number of S-pair reductions; running out raises
:class:`~polardeg.errors.Undecided` instead of returning a partial answer.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product as _cartesian

from flint import fmpq

from .errors import Undecided
from .poly import Polynomial, grevlex_key

DEFAULT_STEPS = 20000


def step_budget() -> int:
    return int(os.environ.get("POLARDEG_GROEBNER_STEPS", DEFAULT_STEPS))


def _lm(p: dict):
    return max(p, key=grevlex_key)


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _monic(p: dict) -> dict:
    inv = 1 / p[_lm(p)]
    return {e: c * inv for e, c in p.items()}


def _reduce(f: dict, basis: list[tuple[dict, tuple]], truncate: int | None) -> dict:
    """Full normal form of ``f`` modulo monic ``basis`` (pairs of poly and leading monomial)."""
    f = {e: c for e, c in f.items() if truncate is None or sum(e) < truncate}
    out = {}
    while f:
        e = _lm(f)
        c = f.pop(e)
        for g, lm in basis:
            if _divides(lm, e):
                shift = tuple(a - b for a, b in zip(e, lm))
                for ge, gc in g.items():
                    if ge == lm:
                        continue
                    k = tuple(a + b for a, b in zip(ge, shift))
                    if truncate is not None and sum(k) >= truncate:
                        continue
                    s = f.get(k, 0) - c * gc
                    if s:
                        f[k] = s
                    else:
                        f.pop(k, None)
                break
        else:
            out[e] = c
    return out


def _spoly(f: dict, lf, g: dict, lg) -> dict:
    m = _lcm(lf, lg)
    sf = tuple(a - b for a, b in zip(m, lf))
    sg = tuple(a - b for a, b in zip(m, lg))
    out: dict = {}
    for e, c in f.items():
        k = tuple(a + b for a, b in zip(e, sf))
        out[k] = out.get(k, 0) + c
    for e, c in g.items():
        k = tuple(a + b for a, b in zip(e, sg))
        out[k] = out.get(k, 0) - c
    return {e: c for e, c in out.items() if c}


@dataclass(frozen=True)
class GroebnerBasis:
    variables: tuple[str, ...]
    generators: tuple[Polynomial, ...]
    ordering: str = "grevlex"
    truncation: int | None = None

    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [g.leading_exponent() for g in self.generators]

    def reduce(self, f: Polynomial) -> Polynomial:
        basis = [(g.terms, g.leading_exponent()) for g in self.generators]
        return Polynomial._raw(self.variables, _reduce(f.terms, basis, self.truncation))

    def is_unit_ideal(self) -> bool:
        return any(g.is_constant() for g in self.generators)

    def contains_pure_powers(self, indices=None) -> bool:
        if self.truncation is not None:
            return True
        n = len(self.variables)
        want = range(n) if indices is None else indices
        lms = self.leading_monomials()
        for i in want:
            if not any(lm[i] > 0 and sum(lm) == lm[i] for lm in lms):
                return False
        return True

    def standard_monomials(self) -> list[tuple[int, ...]]:
        """Monomials outside the leading-term ideal; requires a zero-dimensional ideal."""
        if self.is_unit_ideal():
            return []
        n = len(self.variables)
        lms = self.leading_monomials()
        if self.truncation is not None:
            return [
                e
                for d in range(self.truncation)
                for e in _compositions(d, n)
                if not any(_divides(lm, e) for lm in lms)
            ]
        if not self.contains_pure_powers():
            raise ValueError("ideal is not zero-dimensional")
        bounds = []
        for i in range(n):
            bounds.append(min(lm[i] for lm in lms if lm[i] > 0 and sum(lm) == lm[i]))
        out = []
        for e in _cartesian(*(range(b) for b in bounds)):
            if not any(_divides(lm, e) for lm in lms):
                out.append(e)
        return out

    def s_pairs_reduce_to_zero(self) -> bool:
        basis = [(g.terms, g.leading_exponent()) for g in self.generators]
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                s = _spoly(basis[i][0], basis[i][1], basis[j][0], basis[j][1])
                if _reduce(s, basis, self.truncation):
                    return False
        return True


def groebner_basis(gens, steps: int | None = None, truncate: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    With ``truncate = N`` the computation happens modulo the ideal of all
    monomials of degree ``N``.  Those monomials stay implicit: terms of
    degree ``>= N`` are discarded, and the S-pairs against them become the
    products ``m * tail(h)`` with ``deg(m * lm(h)) = N``.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("groebner basis of the zero ideal")
    variables = gens[0].variables
    n = len(variables)
    budget = step_budget() if steps is None else steps

    polys = []
    for g in gens:
        t = {e: c for e, c in g.terms.items() if truncate is None or sum(e) < truncate}
        if t:
            polys.append(_monic(t))

    basis: list[tuple[dict, tuple]] = []
    pairs: set[tuple[int, int]] = set()
    pending: list[dict] = []

    def add(p):
        lm = _lm(p)
        idx = len(basis)
        basis.append((p, lm))
        for i in range(idx):
            pairs.add((i, idx))
        if truncate is not None:
            tail = [(e, c) for e, c in p.items() if e != lm]
            for m in _compositions(truncate - sum(lm), n):
                q = {}
                for e, c in tail:
                    k = tuple(a + b for a, b in zip(e, m))
                    if sum(k) < truncate:
                        q[k] = c
                if q:
                    pending.append(q)

    for p in polys:
        r = _reduce(p, basis, truncate)
        if r:
            add(_monic(r))

    used = 0
    while pairs or pending:
        if pending:
            used += 1
            if used > budget:
                raise Undecided(f"groebner step budget of {budget} exhausted")
            r = _reduce(pending.pop(), basis, truncate)
            if r:
                add(_monic(r))
            continue
        i, j = min(pairs, key=lambda ij: (sum(_lcm(basis[ij[0]][1], basis[ij[1]][1])), ij))
        pairs.discard((i, j))
        (f, lf), (g, lg) = basis[i], basis[j]
        if len(f) == 1 and len(g) == 1:
            continue
        if all(a == 0 or b == 0 for a, b in zip(lf, lg)):
            continue
        m = _lcm(lf, lg)
        if any(
            k not in (i, j)
            and _divides(basis[k][1], m)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(basis))
        ):
            continue
        used += 1
        if used > budget:
            raise Undecided(f"groebner step budget of {budget} exhausted")
        s = _reduce(_spoly(f, lf, g, lg), basis, truncate)
        if s:
            add(_monic(s))

    # minimal, then reduced
    keep = []
    for i, (p, lm) in enumerate(basis):
        if any(
            _divides(lm2, lm) and (lm2 != lm or k < i)
            for k, (_, lm2) in enumerate(basis)
            if k != i
        ):
            continue
        keep.append((p, lm))
    reduced = []
    for i, (p, lm) in enumerate(keep):
        others = [b for k, b in enumerate(keep) if k != i]
        tail = _reduce({e: c for e, c in p.items() if e != lm}, others, truncate)
        tail[lm] = fmpq(1)
        reduced.append(Polynomial._raw(variables, tail))
    reduced.sort(key=lambda q: grevlex_key(q.leading_exponent()))
    return GroebnerBasis(variables, tuple(reduced), truncation=truncate)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for a in range(total, -1, -1):
        for rest in _compositions(total - a, parts - 1):
            yield (a,) + rest


def jacobian_zero_dimensional(f: Polynomial, steps: int | None = None) -> bool:
    """True iff the gradient ideal cuts out only the origin of the affine cone.

    For homogeneous ``f`` this is exactly smoothness of the projective
    hypersurface.
    """
    grad = [g for g in f.gradient() if not g.is_zero()]
    if len(grad) < f.nvars:
        return False
    return groebner_basis(grad, steps).contains_pure_powers()


def quotient_dimension(gens, truncate: int | None = None, steps: int | None = None) -> int:
    return len(groebner_basis(gens, steps, truncate).standard_monomials())
