"""Resultants, gcds and squarefree decomposition over the rationals.

All three are driven by one subresultant polynomial remainder sequence
which works over any coefficient ring with exact division.  When the
coefficients are univariate the ring is ``fmpq_poly``, otherwise
:class:`~polardeg.poly.Polynomial`.
"""

from __future__ import annotations

import random
from functools import reduce

from flint import fmpq, fmpq_poly

from .poly import Polynomial


class _UnivariateRing:
    zero = fmpq_poly([])
    one = fmpq_poly([1])

    @staticmethod
    def exquo(a, b):
        q, r = divmod(a, b)
        if r != 0:
            raise ArithmeticError("inexact division in Q[x]")
        return q

    @staticmethod
    def is_zero(a) -> bool:
        return a == 0


class _PolynomialRing:
    def __init__(self, variables):
        self.zero = Polynomial.zero(variables)
        self.one = Polynomial.one(variables)

    @staticmethod
    def exquo(a, b):
        return a.exquo(b)

    @staticmethod
    def is_zero(a) -> bool:
        return a.is_zero()


def _strip(p, ring):
    while p and ring.is_zero(p[-1]):
        p.pop()
    return p


def _prem(a, b, ring):
    db = len(b) - 1
    lcb = b[-1]
    r = list(a)
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        shift = len(r) - 1 - db
        lcr = r[-1]
        r = [x * lcb for x in r]
        for i, y in enumerate(b):
            r[i + shift] = r[i + shift] - lcr * y
        r.pop()
        _strip(r, ring)
        e -= 1
    if e > 0:
        f = lcb ** e
        r = [x * f for x in r]
    return r


def subresultant_prs(a: list, b: list, ring) -> tuple[object, list[list]]:
    """Resultant of two coefficient lists plus the remainder chain.

    The sign follows the Sylvester-matrix determinant with ``a``'s rows
    first.  The chain starts with the inputs (larger degree first) and
    ends with the last nonzero remainder.
    """
    a = _strip(list(a), ring)
    b = _strip(list(b), ring)
    if not a or not b:
        return ring.zero, []
    s = 1
    if len(a) < len(b):
        a, b = b, a
        if (len(a) - 1) * (len(b) - 1) % 2:
            s = -1
    chain = [a, b]
    if len(b) == 1:
        return s * b[0] ** (len(a) - 1), chain
    g = h = ring.one
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        r = _prem(a, b, ring)
        a = b
        denom = g * h ** delta
        b = [ring.exquo(x, denom) for x in r]
        if not b:
            return ring.zero, chain
        chain.append(b)
        g = a[-1]
        if delta:
            h = ring.exquo(g ** delta, h ** (delta - 1))
        if len(b) == 1:
            break
    da = len(a) - 1
    return s * ring.exquo(b[-1] ** da, h ** (da - 1)), chain


def _coefficient_lists(f: Polynomial, g: Polynomial, var: str):
    """Coefficient lists of f, g in ``var`` over the cheapest ring."""
    others = sorted(
        (set(f.used_variables()) | set(g.used_variables())) - {var},
        key=f.variables.index,
    )
    cf = f.coefficients_in(var)
    cg = g.coefficients_in(var)
    if len(others) <= 1:
        u = others[0] if others else var
        conv = [[c.to_univariate(u) for c in cf], [c.to_univariate(u) for c in cg]]
        return conv[0], conv[1], _UnivariateRing, u
    return cf, cg, _PolynomialRing(f.variables), None


def _back(c, u, variables):
    if isinstance(c, fmpq_poly):
        return Polynomial.from_univariate(c, u, variables)
    return c


def resultant_with_chain(f: Polynomial, g: Polynomial, var: str):
    """Resultant in ``var`` and the subresultant chain, both as Polynomials.

    Chain entries are lists of coefficient Polynomials (low degree first).
    """
    if f.variables != g.variables:
        raise ValueError("variable mismatch")
    f.index(var)
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of a zero polynomial")
    if f.degree(var) <= 0 and g.degree(var) <= 0:
        raise ValueError(f"both inputs are constant in {var}")
    a, b, ring, u = _coefficient_lists(f, g, var)
    res, chain = subresultant_prs(a, b, ring)
    res = _back(res, u, f.variables)
    chain = [[_back(c, u, f.variables) for c in p] for p in chain]
    return res, chain


def resultant(f: Polynomial, g: Polynomial, var: str) -> Polynomial:
    """Sylvester resultant of ``f`` and ``g`` eliminating ``var``.

    >>> from polardeg.poly import parse_polynomial as P
    >>> str(resultant(P("y^2 - x^3", "xy"), P("2*y", "xy"), "y"))
    '-4*x^3'
    """
    return resultant_with_chain(f, g, var)[0]


def _from_coefficients(coeffs, var, variables):
    x = Polynomial.gen(variables, var)
    out = Polynomial.zero(variables)
    for i, c in enumerate(coeffs):
        if not c.is_zero():
            out = out + c * x ** i
    return out


def content(f: Polynomial, var: str) -> Polynomial:
    coeffs = [c for c in f.coefficients_in(var) if not c.is_zero()]
    return reduce(gcd, coeffs, Polynomial.zero(f.variables))


def gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Greatest common divisor over Q, integer-primitive with positive leading coefficient."""
    if f.variables != g.variables:
        raise ValueError("variable mismatch")
    if f.is_zero():
        return g.primitive()
    if g.is_zero():
        return f.primitive()
    if f.is_constant() or g.is_constant():
        return Polynomial.one(f.variables)
    used = sorted(set(f.used_variables()) | set(g.used_variables()), key=f.variables.index)
    if len(used) == 1:
        v = used[0]
        p = f.to_univariate(v).gcd(g.to_univariate(v))
        return Polynomial.from_univariate(p, v, f.variables).primitive()
    v = max(used, key=lambda w: (min(f.degree(w), g.degree(w)), -f.variables.index(w)))
    cf, cg = content(f, v), content(g, v)
    c = gcd(cf, cg)
    pf, pg = f.exquo(cf), g.exquo(cg)
    h = Polynomial.one(f.variables)
    if pf.degree(v) > 0 and pg.degree(v) > 0:
        a, b, ring, u = _coefficient_lists(pf, pg, v)
        _, chain = subresultant_prs(a, b, ring)
        last = chain[-1]
        if len(last) > 1:
            last = _from_coefficients([_back(x, u, f.variables) for x in last], v, f.variables)
            h = last.exquo(content(last, v))
    return (c * h).primitive()


def have_common_factor(f: Polynomial, g: Polynomial) -> bool:
    return not gcd(f, g).is_constant()


def _squarefree_on_random_line(f: Polynomial, seed: int) -> bool:
    """Sound certificate: True proves ``f`` squarefree."""
    rng = random.Random(seed)
    s = Polynomial.gen(("s",), "s")
    image = {v: Polynomial.constant(("s",), rng.randint(-50, 50)) + rng.randint(-50, 50) * s
             for v in f.variables}
    p = f.substitute(image, ("s",)).to_univariate("s")
    if p.degree() != f.total_degree():
        return False
    return p.gcd(p.derivative()).degree() == 0


def squarefree_part(f: Polynomial, seed: int = 0) -> Polynomial:
    """Radical of the principal ideal ``(f)``, integer-primitive."""
    if f.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    if f.is_constant():
        return Polynomial.one(f.variables)
    if _squarefree_on_random_line(f, seed):
        return f.primitive()
    g = f
    for v in f.used_variables():
        g = gcd(g, f.derivative(v))
        if g.is_constant():
            break
    return f.exquo(g).primitive()


def is_squarefree(f: Polynomial, seed: int = 0) -> bool:
    if f.is_constant():
        return True
    if _squarefree_on_random_line(f, seed):
        return True
    return squarefree_part(f, seed).total_degree() == f.total_degree()


def squarefree_decomposition(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Factors ``(b_i, i)`` with ``f = c * prod b_i^i``, the ``b_i`` squarefree and coprime."""
    if f.is_zero():
        raise ValueError("squarefree decomposition of the zero polynomial")
    layers = []
    rest = f.primitive()
    while not rest.is_constant():
        a = squarefree_part(rest)
        layers.append(a)
        rest = rest.exquo(a)
    out = []
    for i, a in enumerate(layers):
        nxt = layers[i + 1] if i + 1 < len(layers) else Polynomial.one(f.variables)
        b = a.exquo(nxt)
        if not b.is_constant():
            out.append((b.primitive(), i + 1))
    return out
