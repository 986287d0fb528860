"""Dense univariate polynomials over field-like coefficients.

Polynomials are Python lists, lowest degree first.  Coefficients are
``fmpq`` (or ``int``) or extension elements.  Over an extension context a
"field" may secretly be a product of fields; the two primitives
:func:`czero` and :func:`cinv` raise ``Split`` whenever they meet a zero
divisor, so every routine here is correct under dynamic evaluation.
"""

from __future__ import annotations

from flint import fmpq


def czero(c) -> bool:
    """Semantic zero test (may raise Split for extension elements)."""
    if isinstance(c, (int, fmpq)):
        return c == 0
    return c.is_zero()


def cinv(c):
    if isinstance(c, (int, fmpq)):
        if c == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / fmpq(c)
    return c.inverse()


def strip(p: list) -> list:
    """Drop exactly-zero leading coefficients (no zero-divisor test)."""
    while p and not p[-1]:
        p.pop()
    return p


def normalize(p: list) -> list:
    """Drop leading coefficients that are zero; the survivor is a unit."""
    p = list(p)
    while p and czero(p[-1]):
        p.pop()
    return p


def degree(p: list) -> int:
    return len(normalize(p)) - 1


def add(a: list, b: list) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return strip(out)


def neg(a: list) -> list:
    return [-c for c in a]


def sub(a: list, b: list) -> list:
    return add(a, neg(b))


def scale(a: list, c) -> list:
    return strip([x * c for x in a])


def mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return strip(out)


def divmod_(a: list, b: list) -> tuple[list, list]:
    b = normalize(b)
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    inv = cinv(b[-1])
    r = list(a)
    db = len(b) - 1
    q = [0] * max(len(r) - db, 0)
    strip(r)
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        c = r[-1] * inv
        q[shift] = c
        for i, y in enumerate(b):
            r[i + shift] = r[i + shift] - c * y
        r.pop()
        strip(r)
    return strip(q), r


def rem(a: list, b: list) -> list:
    return divmod_(a, b)[1]


def monic(p: list) -> list:
    p = normalize(p)
    if not p:
        return p
    inv = cinv(p[-1])
    return [c * inv for c in p[:-1]] + [1]


def gcd(a: list, b: list) -> list:
    """Monic gcd; every remainder is degree-normalized, so splits surface."""
    a, b = normalize(a), normalize(b)
    while b:
        a, b = b, normalize(rem(a, b))
    return monic(a)


def xgcd(a: list, b: list) -> tuple[list, list, list]:
    """Return ``(g, s, t)`` with ``g = s*a + t*b`` monic."""
    r0, r1 = normalize(a), normalize(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, normalize(r)
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    if not r0:
        return [], s0, t0
    inv = cinv(r0[-1])
    return [c * inv for c in r0[:-1]] + [1], scale(s0, inv), scale(t0, inv)


def exquo(a: list, b: list) -> list:
    q, r = divmod_(a, b)
    if normalize(r):
        raise ArithmeticError("inexact univariate division")
    return q


def derivative(p: list) -> list:
    return strip([p[i] * i for i in range(1, len(p))])


def evaluate(p: list, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def squarefree_decomposition(p: list) -> list[tuple[list, int]]:
    """Yun's algorithm: ``p = lc * prod f_i^i`` with monic, pairwise coprime ``f_i``."""
    p = monic(p)
    if len(p) <= 1:
        return []
    dp = derivative(p)
    a = gcd(p, dp)
    b = exquo(p, a)
    c = exquo(dp, a)
    d = sub(c, derivative(b))
    out = []
    i = 1
    while degree(b) > 0:
        a = gcd(b, d)
        b = exquo(b, a)
        c = exquo(d, a)
        if degree(a) > 0:
            out.append((a, i))
        d = sub(c, derivative(b))
        i += 1
    return out


def squarefree_part(p: list) -> list:
    p = monic(p)
    if len(p) <= 1:
        return p
    return exquo(p, gcd(p, derivative(p)))
