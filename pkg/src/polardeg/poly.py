"""Sparse exact multivariate polynomials.

A :class:`Polynomial` is an immutable map from exponent tuples to nonzero
coefficients.  Coefficients are ``flint.fmpq`` rationals, or elements of an
algebraic extension (anything that supports ``+ - *`` with itself and with
integers, and whose truth value says whether it is exactly zero).
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from flint import fmpq, fmpq_mat, fmpq_poly

from .errors import ParseError, UnknownVariable

QQ = fmpq

Exponent = tuple[int, ...]


def to_qq(c):
    """Coerce Python numbers to ``fmpq``; leave extension elements alone."""
    if isinstance(c, fmpq):
        return c
    if isinstance(c, int):
        return fmpq(c)
    if isinstance(c, Fraction):
        return fmpq(c.numerator, c.denominator)
    return c


def grevlex_key(e: Exponent):
    """Sort key such that ``max`` picks the graded-reverse-lex leading monomial."""
    return (sum(e), tuple(-a for a in reversed(e)))


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


class Polynomial:
    __slots__ = ("variables", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[Sequence[int], object] | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean: dict[Exponent, object] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(a) for a in e)
            if len(e) != n or any(a < 0 for a in e):
                raise ValueError(f"bad exponent {e} for variables {self.variables}")
            c = to_qq(c)
            if c:
                clean[e] = c
        self.terms = clean

    @classmethod
    def _raw(cls, variables: tuple[str, ...], terms: dict) -> "Polynomial":
        obj = object.__new__(cls)
        obj.variables = variables
        obj.terms = terms
        return obj

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, variables) -> "Polynomial":
        return cls._raw(tuple(variables), {})

    @classmethod
    def constant(cls, variables, c) -> "Polynomial":
        variables = tuple(variables)
        c = to_qq(c)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def one(cls, variables) -> "Polynomial":
        return cls.constant(variables, 1)

    @classmethod
    def gen(cls, variables, name: str) -> "Polynomial":
        variables = tuple(variables)
        if name not in variables:
            raise UnknownVariable(f"unknown variable {name!r}")
        e = [0] * len(variables)
        e[variables.index(name)] = 1
        return cls._raw(variables, {tuple(e): fmpq(1)})

    @classmethod
    def gens(cls, variables) -> list["Polynomial"]:
        return [cls.gen(variables, v) for v in variables]

    @classmethod
    def linear_form(cls, variables, coeffs: Sequence) -> "Polynomial":
        variables = tuple(variables)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * len(variables)
            e[i] = 1
            terms[tuple(e)] = c
        return cls(variables, terms)

    # -- basic queries --------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, var: str) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise UnknownVariable(f"unknown variable {var!r}") from None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_coefficient(self):
        return self.terms.get((0,) * self.nvars, fmpq(0))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree(self, var: str) -> int:
        if not self.terms:
            return -1
        i = self.index(var)
        return max(e[i] for e in self.terms)

    def order(self) -> int:
        """Lowest total degree of a stored term (exact zero test only)."""
        if not self.terms:
            return -1
        return min(sum(e) for e in self.terms)

    def used_variables(self) -> tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.variables) if any(e[i] for e in self.terms))

    def is_homogeneous(self) -> tuple[bool, int]:
        if not self.terms:
            raise ValueError("the zero polynomial has no degree")
        degs = {sum(e) for e in self.terms}
        if len(degs) == 1:
            return True, degs.pop()
        return False, max(degs)

    def homogeneous_component(self, d: int) -> "Polynomial":
        return Polynomial._raw(self.variables, {e: c for e, c in self.terms.items() if sum(e) == d})

    def leading_exponent(self) -> Exponent:
        return max(self.terms, key=grevlex_key)

    def leading_coefficient(self):
        return self.terms[self.leading_exponent()]

    def coefficient(self, exponent: Sequence[int]):
        return self.terms.get(tuple(exponent), fmpq(0))

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.variables != self.variables:
                raise ValueError(f"variable mismatch {self.variables} vs {other.variables}")
            return other
        return Polynomial.constant(self.variables, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            s = c if s is None else s + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Polynomial._raw(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            other = to_qq(other)
            if not other:
                return Polynomial.zero(self.variables)
            return Polynomial._raw(self.variables, {e: c * other for e, c in self.terms.items() if c * other})
        other = self._coerce(other)
        terms: dict = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = _add_exp(ea, eb)
                s = terms.get(e)
                terms[e] = ca * cb if s is None else s + ca * cb
        return Polynomial._raw(self.variables, {e: c for e, c in terms.items() if c})

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.one(self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale_monomial(self, exponent: Exponent, c=1) -> "Polynomial":
        """Return ``c * x^exponent * self``."""
        c = to_qq(c)
        return Polynomial._raw(
            self.variables,
            {_add_exp(e, exponent): v * c for e, v in self.terms.items() if v * c},
        )

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.variables == other.variables and self.terms == other.terms
        try:
            return self == Polynomial.constant(self.variables, other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset((e, str(c)) for e, c in self.terms.items())))

    def exquo(self, other: "Polynomial") -> "Polynomial":
        """Exact division; raises ``ArithmeticError`` when ``other`` does not divide."""
        other = self._coerce(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        lt = other.leading_exponent()
        lc_inv = 1 / other.terms[lt] if isinstance(other.terms[lt], fmpq) else other.terms[lt].inverse()
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            e = max(rem, key=grevlex_key)
            shift = tuple(a - b for a, b in zip(e, lt))
            if any(a < 0 for a in shift):
                raise ArithmeticError("inexact polynomial division")
            c = rem[e] * lc_inv
            quot[shift] = c
            for eb, cb in other.terms.items():
                k = _add_exp(eb, shift)
                s = rem.get(k, 0) - c * cb
                if s:
                    rem[k] = s
                else:
                    rem.pop(k, None)
        return Polynomial._raw(self.variables, quot)

    # -- calculus and substitution ------------------------------------
    def derivative(self, var: str) -> "Polynomial":
        i = self.index(var)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                k = list(e)
                k[i] -= 1
                terms[tuple(k)] = c * e[i]
        return Polynomial._raw(self.variables, terms)

    def gradient(self) -> list["Polynomial"]:
        return [self.derivative(v) for v in self.variables]

    def substitute(self, mapping: Mapping[str, object], variables: Sequence[str] | None = None) -> "Polynomial":
        """Replace variables by polynomials (or scalars) in ``variables``.

        Variables absent from ``mapping`` map to the generator of the same
        name in the target ring.
        """
        target = tuple(variables) if variables is not None else self.variables
        images = []
        for v in self.variables:
            if v in mapping:
                img = mapping[v]
                if not isinstance(img, Polynomial):
                    img = Polynomial.constant(target, img)
                elif img.variables != target:
                    raise ValueError("substitution image lives in the wrong ring")
            else:
                img = Polynomial.gen(target, v)
            images.append(img)
        powers: list[dict[int, Polynomial]] = [{0: Polynomial.one(target), 1: img} for img in images]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * images[i]
            return cache[k]

        result: dict = {}
        for e, c in self.terms.items():
            term = None
            for i, k in enumerate(e):
                if k:
                    term = power(i, k) if term is None else term * power(i, k)
            if term is None:
                term = Polynomial.one(target)
            for te, tc in term.terms.items():
                s = result.get(te)
                result[te] = tc * c if s is None else s + tc * c
        return Polynomial._raw(target, {e: c for e, c in result.items() if c})

    def evaluate(self, values: Mapping[str, object] | Sequence[object]):
        """Evaluate at a point; ``values`` is a mapping or a full coordinate list."""
        if isinstance(values, Mapping):
            vals = [values[v] for v in self.variables]
        else:
            vals = list(values)
            if len(vals) != self.nvars:
                raise ValueError("wrong number of coordinates")
        cache: dict[tuple[int, int], object] = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = vals[i] if k == 1 else power(i, k - 1) * vals[i]
            return cache[key]

        total = fmpq(0)
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            total = term + total
        return total

    def map_coefficients(self, fn) -> "Polynomial":
        terms = {}
        for e, c in self.terms.items():
            c = fn(c)
            if c:
                terms[e] = c
        return Polynomial._raw(self.variables, terms)

    def with_variables(self, variables: Sequence[str]) -> "Polynomial":
        """Re-express the polynomial over another variable list (reorder/extend/drop unused)."""
        variables = tuple(variables)
        idx = []
        for v in variables:
            idx.append(self.variables.index(v) if v in self.variables else None)
        used = set(self.used_variables())
        missing = used - set(variables)
        if missing:
            raise UnknownVariable(f"variables {sorted(missing)} not in target ring")
        terms = {}
        for e, c in self.terms.items():
            terms[tuple(e[i] if i is not None else 0 for i in idx)] = c
        return Polynomial._raw(variables, terms)

    def coefficients_in(self, var: str) -> list["Polynomial"]:
        """Coefficients with respect to ``var`` (low degree first), same ring."""
        i = self.index(var)
        d = self.degree(var)
        out: list[dict] = [dict() for _ in range(max(d + 1, 0))]
        for e, c in self.terms.items():
            k = list(e)
            k[i] = 0
            out[e[i]][tuple(k)] = c
        return [Polynomial._raw(self.variables, t) for t in out]

    def to_univariate(self, var: str) -> fmpq_poly:
        """Rational univariate polynomial in ``var`` (all other exponents must be 0)."""
        i = self.index(var)
        coeffs: dict[int, fmpq] = {}
        for e, c in self.terms.items():
            if any(a for j, a in enumerate(e) if j != i):
                raise ValueError("polynomial is not univariate in " + var)
            coeffs[e[i]] = c
        if not coeffs:
            return fmpq_poly([])
        return fmpq_poly([coeffs.get(k, 0) for k in range(max(coeffs) + 1)])

    @classmethod
    def from_univariate(cls, p, var: str, variables: Sequence[str]) -> "Polynomial":
        variables = tuple(variables)
        i = variables.index(var)
        terms = {}
        for k, c in enumerate(p.coeffs() if isinstance(p, fmpq_poly) else p):
            if c:
                e = [0] * len(variables)
                e[i] = k
                terms[tuple(e)] = to_qq(c)
        return cls._raw(variables, terms)

    def primitive(self) -> "Polynomial":
        """Integer primitive associate with positive grevlex-leading coefficient."""
        if not self.terms:
            return self
        from math import gcd, lcm

        den = 1
        for c in self.terms.values():
            den = lcm(den, int(c.q))
        nums = [int(c.p) * (den // int(c.q)) for c in self.terms.values()]
        g = 0
        for a in nums:
            g = gcd(g, a)
        if self.leading_coefficient() < 0:
            g = -g
        return Polynomial._raw(
            self.variables,
            {e: fmpq(int(c.p) * (den // int(c.q)) // g) for e, c in self.terms.items()},
        )

    # -- printing ---------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=grevlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k
            )
            if isinstance(c, fmpq):
                neg = c < 0
                a = -c if neg else c
                if mono and a == 1:
                    body = mono
                else:
                    body = str(a) + ("*" + mono if mono else "")
            else:
                neg = False
                body = f"({c})" + ("*" + mono if mono else "")
            parts.append(("-" if neg else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Polynomial({list(self.variables)!r}, {str(self)!r})"


# ---------------------------------------------------------------------------
# parsing


_SINGLE = set("+-*^()/")


def _tokenize(text: str):
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            yield ("int", text[i:j], i)
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            yield ("name", text[i:j], i)
            i = j
        elif ch in _SINGLE:
            yield (ch, ch, i)
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    yield ("end", "", n)


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.tokens = list(_tokenize(text))
        self.pos = 0
        self.variables = tuple(variables)

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", tok[2])
        self.pos += 1
        return tok

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0)
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            if tok[0] in ("name", "int", "("):
                raise ParseError("implicit multiplication is not allowed", tok[2])
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.unary()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.take()
                p = p * self.unary()
            elif kind == "/":
                tok = self.take()
                d = self.take("int")
                if int(d[1]) == 0:
                    raise ParseError("division by zero", tok[2])
                p = p * fmpq(1, int(d[1]))
            elif kind in ("name", "int", "("):
                raise ParseError("implicit multiplication is not allowed", self.peek()[2])
            else:
                return p

    def unary(self) -> Polynomial:
        kind = self.peek()[0]
        if kind == "-":
            self.take()
            return -self.unary()
        if kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                raise ParseError("exponent must be a nonnegative integer literal", tok[2])
            self.take()
            return base ** int(tok[1])
        return base

    def atom(self) -> Polynomial:
        kind, value, at = self.take()
        if kind == "int":
            return Polynomial.constant(self.variables, int(value))
        if kind == "name":
            if value not in self.variables:
                raise UnknownVariable(f"unknown variable {value!r} at position {at}")
            return Polynomial.gen(self.variables, value)
        if kind == "(":
            p = self.expr()
            self.take(")")
            return p
        what = "end of input" if kind == "end" else repr(value)
        raise ParseError(f"unexpected {what}", at)


def parse_polynomial(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse ``text`` over the given variable names.

    >>> str(parse_polynomial("(x+y)^2 - x^2 - 2*x*y", ["x", "y"]))
    'y^2'
    """
    return _Parser(text, variables).parse()


def partial_derivative(f: Polynomial, var: str) -> Polynomial:
    return f.derivative(var)


def is_homogeneous(f: Polynomial) -> tuple[bool, int]:
    return f.is_homogeneous()


# ---------------------------------------------------------------------------
# linear coordinate changes


class CoordinateChange:
    """Invertible linear substitution ``x_i -> sum_j M[i][j] x_j``."""

    __slots__ = ("matrix", "inverse")

    def __init__(self, rows: Sequence[Sequence], _inverse=None):
        m = fmpq_mat([[to_qq(a) for a in row] for row in rows])
        if m.nrows() != m.ncols():
            raise ValueError("coordinate change must be square")
        if m.det() == 0:
            raise ValueError("coordinate change is singular")
        self.matrix = m
        self.inverse = _inverse if _inverse is not None else m.inv()

    @property
    def size(self) -> int:
        return self.matrix.nrows()

    @classmethod
    def identity(cls, size: int) -> "CoordinateChange":
        return cls([[int(i == j) for j in range(size)] for i in range(size)])

    @classmethod
    def random(cls, size: int, seed: int, bound: int = 5) -> "CoordinateChange":
        rng = random.Random(seed)
        while True:
            rows = [[rng.randint(-bound, bound) for _ in range(size)] for _ in range(size)]
            if fmpq_mat(rows).det() != 0:
                return cls(rows)

    def inverted(self) -> "CoordinateChange":
        return CoordinateChange(
            [[self.inverse[i, j] for j in range(self.size)] for i in range(self.size)],
            _inverse=self.matrix,
        )

    def rows(self) -> list[list[fmpq]]:
        return [[self.matrix[i, j] for j in range(self.size)] for i in range(self.size)]


def apply_change(f: Polynomial, c: CoordinateChange) -> Polynomial:
    """Substitute every variable by the corresponding row of ``c``."""
    if c.size != f.nvars:
        raise ValueError(f"coordinate change of size {c.size} for {f.nvars} variables")
    images = {
        v: Polynomial.linear_form(f.variables, [c.matrix[i, j] for j in range(c.size)])
        for i, v in enumerate(f.variables)
    }
    return f.substitute(images)
