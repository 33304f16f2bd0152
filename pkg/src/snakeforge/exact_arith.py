"""Exact polynomial arithmetic over the rationals.

``UniPoly`` is an element of Q[x] and ``BiPoly`` an element of Q[x][y],
stored as a tuple of ``UniPoly`` coefficients indexed by the power of y.
Both are immutable and normalized (no trailing zero coefficients), so
structural equality is mathematical equality.

Coefficients are ``fractions.Fraction``; there is no floating point
anywhere in this module.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import EqualPolynomials, ParseError

Rational = Fraction
Number = Union[int, Fraction]


class _Infinity:
    """Valuation of the zero polynomial; absorbs addition, exceeds every int."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __add__(self, other):
        if isinstance(other, (int, _Infinity)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("snakeforge.INFINITY")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INFINITY = _Infinity()


def _strip(coeffs: list) -> tuple:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


class UniPoly:
    """Polynomial in one variable with rational coefficients.

    ``UniPoly([c0, c1, c2])`` is ``c0 + c1*x + c2*x^2``. The zero
    polynomial has ``degree == -1``.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        self._c = _strip([Fraction(c) for c in coeffs])

    @classmethod
    def _raw(cls, coeffs: tuple) -> UniPoly:
        # coeffs already Fractions and stripped
        p = object.__new__(cls)
        p._c = coeffs
        return p

    @classmethod
    def monomial(cls, coeff: Number, k: int) -> UniPoly:
        if k < 0:
            raise ValueError("negative exponent")
        return cls([0] * k + [coeff])

    @classmethod
    def constant(cls, c: Number) -> UniPoly:
        return cls([c])

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    @property
    def lc(self) -> Fraction:
        return self._c[-1] if self._c else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        return self._c[k] if 0 <= k < len(self._c) else Fraction(0)

    def is_zero(self) -> bool:
        return not self._c

    def is_constant(self) -> bool:
        return len(self._c) <= 1

    def terms(self) -> list[tuple[int, Fraction]]:
        return [(k, c) for k, c in enumerate(self._c) if c]

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == UniPoly([other])._c
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __repr__(self):
        return f"UniPoly({format_unipoly(self)!r})"

    def __str__(self):
        return format_unipoly(self)

    @staticmethod
    def _coerce(other) -> UniPoly | None:
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly([other])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._c, o._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly._raw(_strip(out))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._raw(tuple(-c for c in self._c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return UniPoly()
            return UniPoly._raw(tuple(c * other for c in self._c))
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self._c, other._c
        if not a or not b:
            return UniPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not ca:
                continue
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
        return UniPoly._raw(_strip(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result, base = UniPoly([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x0: Number) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self._c):
            acc = acc * x0 + c
        return acc

    def compose(self, q: UniPoly) -> UniPoly:
        """self(q(x))."""
        acc = UniPoly()
        for c in reversed(self._c):
            acc = acc * q + c
        return acc

    def derivative(self) -> UniPoly:
        return UniPoly._raw(tuple(k * c for k, c in enumerate(self._c))[1:])

    def antiderivative(self) -> UniPoly:
        """Primitive with zero constant term."""
        if not self._c:
            return UniPoly()
        return UniPoly._raw((Fraction(0),) + tuple(c / (k + 1) for k, c in enumerate(self._c)))

    def __divmod__(self, other: UniPoly):
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._c)
        dq = other.degree
        lc = other.lc
        if len(rem) - 1 < dq:
            return UniPoly(), self
        quot = [Fraction(0)] * (len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if not c:
                continue
            f = c / lc
            quot[k - dq] = f
            for j, oc in enumerate(other._c):
                rem[k - dq + j] -= f * oc
        return UniPoly._raw(_strip(quot)), UniPoly._raw(_strip(rem[:dq]))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> UniPoly:
        if not self._c:
            return self
        return self * (1 / self.lc)

    def valuation(self):
        return valuation_x(self)


X = UniPoly([0, 1])


def valuation_x(p: UniPoly):
    """Smallest exponent with a nonzero coefficient; ``INFINITY`` for zero."""
    for k, c in enumerate(p.coeffs):
        if c:
            return k
    return INFINITY


def lowest_coefficient(p: UniPoly) -> Fraction:
    for c in p.coeffs:
        if c:
            return c
    return Fraction(0)


def precedes_right(p: UniPoly, q: UniPoly) -> bool:
    """True iff p(x) < q(x) for all sufficiently small x > 0."""
    d = q - p
    if not d:
        raise EqualPolynomials(f"{p} and {q} are equal")
    return lowest_coefficient(d) > 0


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero if both inputs are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def is_squarefree(p: UniPoly) -> bool:
    if not p:
        return False
    return poly_gcd(p, p.derivative()).degree == 0


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.degree <= 0:
        return p.monic()
    return (p // poly_gcd(p, p.derivative())).monic()


def squarefree_decomposition(p: UniPoly) -> list[UniPoly]:
    """Yun's algorithm: monic f_1, f_2, ... with p = lc * prod f_k^k."""
    if p.degree <= 0:
        return []
    p = p.monic()
    dp = p.derivative()
    g = poly_gcd(p, dp)
    w = p // g
    z = dp // g - w.derivative()
    factors = []
    while w.degree > 0:
        h = poly_gcd(w, z)
        factors.append(h)
        w = w // h
        z = z // h - w.derivative()
    return factors


def resultant(f: UniPoly, g: UniPoly) -> Fraction:
    """Resultant of two univariate polynomials over Q via Euclid's algorithm."""
    if not f or not g:
        return Fraction(0)
    res = Fraction(1)
    while g.degree > 0:
        m, n = f.degree, g.degree
        r = f % g
        if not r:
            return Fraction(0)
        # Res(f, g) = (-1)^{mn} lc(g)^{m - deg r} Res(g, r)
        if (m * n) % 2:
            res = -res
        res *= g.lc ** (m - r.degree)
        f, g = g, r
    return res * g.lc ** f.degree


class BiPoly:
    """Element of Q[x][y]: ``BiPoly([c0, c1, ...])`` is ``sum c_k(x) * y^k``."""

    __slots__ = ("_c",)

    def __init__(self, y_coeffs: Iterable[UniPoly | Number] = ()):
        cs = [c if isinstance(c, UniPoly) else UniPoly([c]) for c in y_coeffs]
        self._c = _strip(cs)

    @classmethod
    def _raw(cls, coeffs: tuple) -> BiPoly:
        p = object.__new__(cls)
        p._c = coeffs
        return p

    @classmethod
    def from_unipoly(cls, p: UniPoly) -> BiPoly:
        return cls([p])

    @property
    def y_coeffs(self) -> tuple:
        return self._c

    @property
    def y_degree(self) -> int:
        return len(self._c) - 1

    def coeff(self, k: int) -> UniPoly:
        return self._c[k] if 0 <= k < len(self._c) else UniPoly()

    def is_monic(self) -> bool:
        return bool(self._c) and self._c[-1] == UniPoly([1])

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self._c == other._c
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __repr__(self):
        return f"BiPoly({format_bipoly(self)!r})"

    def __str__(self):
        return format_bipoly(self)

    @staticmethod
    def _coerce(other) -> BiPoly | None:
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, (UniPoly, int, Fraction)):
            return BiPoly([other])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._c, o._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return BiPoly._raw(_strip(out))

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._raw(tuple(-c for c in self._c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, UniPoly)):
            return BiPoly._raw(_strip([c * other for c in self._c]))
        if not isinstance(other, BiPoly):
            return NotImplemented
        a, b = self._c, other._c
        if not a or not b:
            return BiPoly()
        out = [UniPoly()] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not ca:
                continue
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] = out[i + j] + ca * cb
        return BiPoly._raw(_strip(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = BiPoly([1])
        for _ in range(n):
            result = result * self
        return result

    def evaluate(self, x0: Number, y0: Number) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self._c):
            acc = acc * y0 + c(x0)
        return acc

    def specialize_x(self, x0: Number) -> UniPoly:
        """The univariate polynomial y -> P(x0, y)."""
        return UniPoly([c(x0) for c in self._c])


Y = BiPoly([0, 1])


def product_of_linear_factors(roots: Sequence[UniPoly]) -> BiPoly:
    """prod (y - a_i(x)), monic in y."""
    acc = BiPoly([1])
    for a in roots:
        acc = acc * BiPoly([-a, UniPoly([1])])
    return acc


def derivative_y(P: BiPoly) -> BiPoly:
    return BiPoly._raw(tuple(c * k for k, c in enumerate(P.y_coeffs))[1:])


def antiderivative_y(P: BiPoly) -> BiPoly:
    """Primitive in y with R(x, 0) = 0."""
    if not P:
        return BiPoly()
    return BiPoly._raw((UniPoly(),) + tuple(c * Fraction(1, k + 1) for k, c in enumerate(P.y_coeffs)))


def compose_y(P: BiPoly, a: UniPoly) -> UniPoly:
    """Substitute y := a(x)."""
    acc = UniPoly()
    for c in reversed(P.y_coeffs):
        acc = acc * a + c
    return acc


def definite_integral_y(P: BiPoly, lo: UniPoly, hi: UniPoly) -> UniPoly:
    R = antiderivative_y(P)
    return compose_y(R, hi) - compose_y(R, lo)


# -- text syntax -----------------------------------------------------------

def _fmt_number(c: Fraction) -> str:
    return str(c)


def format_unipoly(p: UniPoly, var: str = "x") -> str:
    """Ascending-order text form, e.g. ``x^2 + 1/2*x^5``."""
    parts = []
    for k, c in p.terms():
        mag = abs(c)
        if k == 0:
            body = _fmt_number(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{_fmt_number(mag)}*{mono}"
        parts.append((c < 0, body))
    if not parts:
        return "0"
    neg, body = parts[0]
    out = ("-" if neg else "") + body
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


def format_bipoly(P: BiPoly, xvar: str = "x", yvar: str = "y") -> str:
    parts = []
    for k, c in enumerate(P.y_coeffs):
        if not c:
            continue
        ymono = "" if k == 0 else (yvar if k == 1 else f"{yvar}^{k}")
        terms = c.terms()
        if len(terms) == 1:
            neg = terms[0][1] < 0
            cstr = format_unipoly(-c if neg else c, xvar)
            if not ymono:
                body = cstr
            elif cstr == "1":
                body = ymono
            else:
                body = f"{cstr}*{ymono}"
        else:
            neg = False
            cstr = f"({format_unipoly(c, xvar)})"
            body = f"{cstr}*{ymono}" if ymono else cstr
        parts.append((neg, body))
    if not parts:
        return "0"
    neg, body = parts[0]
    out = ("-" if neg else "") + body
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


_TOKEN = re.compile(r"\s*(?:(\d+)|([xy])|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:pos + 1]!r} at position {pos} in {text!r}")
        tok = m.group(1) or m.group(2) or m.group(3)
        out.append("^" if tok == "**" else tok)
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'token'} in {self.text!r}, got {tok!r}")
        self.i += 1
        return tok

    def parse(self) -> BiPoly:
        if not self.toks:
            raise ParseError("empty polynomial")
        result = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input {self.peek()!r} in {self.text!r}")
        return result

    def expr(self) -> BiPoly:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        acc = self.term() * sign
        while self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
            acc = acc + self.term() * sign
        return acc

    def term(self) -> BiPoly:
        acc = self.power()
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
                acc = acc * self.power()
            elif tok == "/":
                self.take()
                den = self.take()
                if not den.isdigit() or int(den) == 0:
                    raise ParseError(f"division only by a nonzero integer literal in {self.text!r}")
                acc = acc * Fraction(1, int(den))
            elif tok is not None and (tok.isdigit() or tok in ("x", "y", "(")):
                acc = acc * self.power()  # juxtaposition, e.g. 3x
            else:
                return acc

    def power(self) -> BiPoly:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            exp = self.take()
            if not exp.isdigit():
                raise ParseError(f"exponent must be a natural number in {self.text!r}")
            return base ** int(exp)
        return base

    def atom(self) -> BiPoly:
        tok = self.take()
        if tok.isdigit():
            return BiPoly([int(tok)])
        if tok == "x":
            return BiPoly([X])
        if tok == "y":
            return Y
        if tok == "(":
            inner = self.expr()
            self.take(")")
            return inner
        if tok == "-":
            return -self.power()
        raise ParseError(f"unexpected {tok!r} in {self.text!r}")


def parse_bipoly(text: str) -> BiPoly:
    return _Parser(text).parse()


def parse_unipoly(text: str, var: str | None = None) -> UniPoly:
    """Parse a polynomial in a single variable.

    ``var`` may be ``"x"`` or ``"y"``; with ``None`` whichever of the two
    appears in the text is used (mixing them is an error).
    """
    tokens = set(_tokenize(text))
    used = tokens & {"x", "y"}
    if var is None:
        if len(used) > 1:
            raise ParseError(f"expected a univariate polynomial, found both x and y in {text!r}")
        var = used.pop() if used else "x"
    elif used - {var}:
        raise ParseError(f"expected a polynomial in {var} only: {text!r}")
    P = parse_bipoly(text)
    if var == "x":
        return P.coeff(0)
    # univariate in y: every y-coefficient is a constant
    return UniPoly([c.coeff(0) for c in P.y_coeffs])


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc
