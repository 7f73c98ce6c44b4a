"""Exact rational functions in one formal parameter ``q``.

A :class:`Scalar` is stored as ``q**shift * num(q) / den(q)`` where ``num`` and
``den`` are coprime polynomials over the rationals with nonzero constant
terms and ``den`` is monic.  This keeps Laurent polynomials (the common case)
free of gcd computations while still allowing division by things like
``1 - q**-2``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

__all__ = ["Scalar", "Q", "ONE", "ZERO", "q_integer", "ArithmeticError_", "ScalarParseError"]

Poly = tuple  # coefficients, lowest degree first, no trailing zeros


class ArithmeticError_(ZeroDivisionError):
    """Division by the zero scalar."""


class ScalarParseError(ValueError):
    pass


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return _trim(out)


def _pneg(a: Poly) -> Poly:
    return tuple(-v for v in a)


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    if len(a) == 1:
        c = a[0]
        return tuple(c * v for v in b)
    if len(b) == 1:
        c = b[0]
        return tuple(v * c for v in a)
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                out[i + j] += u * v
    return _trim(out)


def _pdivmod(a: Poly, b: Poly):
    a = list(a)
    lead = b[-1]
    db = len(b) - 1
    quo = [Fraction(0)] * max(len(a) - db, 1)
    while len(a) - 1 >= db and a:
        k = len(a) - 1 - db
        c = Fraction(a[-1]) / lead
        quo[k] = c
        for i, v in enumerate(b):
            a[k + i] -= c * v
        a = list(_trim(a))
    return _trim(quo), tuple(a)


@lru_cache(maxsize=65536)
def _pgcd(a: Poly, b: Poly) -> Poly:
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    return _monic(a)


def _monic(a: Poly) -> Poly:
    if not a:
        return a
    lead = a[-1]
    if lead == 1:
        return a
    return tuple(Fraction(v) / lead for v in a)


def _low_order(a: Poly) -> int:
    for i, v in enumerate(a):
        if v:
            return i
    raise ValueError("zero polynomial")


def _norm_coeffs(a: Poly) -> Poly:
    # keep integers as ints
    return tuple(int(v) if isinstance(v, Fraction) and v.denominator == 1 else v for v in a)


def _subst_inverse(a: Poly) -> Poly:
    """Reverse coefficients: p(1/q) * q**deg(p)."""
    return tuple(reversed(a))


# ---------------------------------------------------------------------------

class Scalar:
    """Immutable element of Q(q) in canonical reduced form."""

    __slots__ = ("num", "den", "shift", "_hash")

    def __init__(self, num: Poly = (), den: Poly = (1,), shift: int = 0, _canonical: bool = False):
        if _canonical:
            self.num, self.den, self.shift = num, den, shift
        else:
            self.num, self.den, self.shift = _canonicalize(_trim(num), _trim(den), shift)
        self._hash = None

    # constructors ---------------------------------------------------------
    @classmethod
    def const(cls, c) -> "Scalar":
        c = Fraction(c)
        if c == 0:
            return ZERO
        v = int(c) if c.denominator == 1 else c
        return cls((v,), (1,), 0, _canonical=True)

    @classmethod
    def qpow(cls, n: int, coeff=1) -> "Scalar":
        c = Fraction(coeff)
        if c == 0:
            return ZERO
        v = int(c) if c.denominator == 1 else c
        return cls((v,), (1,), int(n), _canonical=True)

    @classmethod
    def laurent(cls, coeffs: dict) -> "Scalar":
        """Build from ``{exponent: coefficient}``."""
        coeffs = {e: c for e, c in coeffs.items() if c}
        if not coeffs:
            return ZERO
        lo = min(coeffs)
        hi = max(coeffs)
        poly = [0] * (hi - lo + 1)
        for e, c in coeffs.items():
            poly[e - lo] = c
        return cls(tuple(poly), (1,), lo)

    @classmethod
    def coerce(cls, v) -> "Scalar":
        if isinstance(v, Scalar):
            return v
        if isinstance(v, (int, Fraction)):
            return cls.const(v)
        return NotImplemented

    # predicates -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_laurent(self) -> bool:
        return self.den == (1,)

    def is_constant(self) -> bool:
        return self.den == (1,) and len(self.num) <= 1 and (self.shift == 0 or not self.num)

    def is_monomial(self) -> bool:
        return self.den == (1,) and len(self.num) == 1

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return other
        if not self.num:
            return other
        if not other.num:
            return self
        if self.den == (1,) and other.den == (1,):
            lo = min(self.shift, other.shift)
            a = (0,) * (self.shift - lo) + self.num
            b = (0,) * (other.shift - lo) + other.num
            return Scalar(_padd(a, b), (1,), lo)
        lo = min(self.shift, other.shift)
        a = _pmul((0,) * (self.shift - lo) + self.num, other.den)
        b = _pmul((0,) * (other.shift - lo) + other.num, self.den)
        return Scalar(_padd(a, b), _pmul(self.den, other.den), lo)

    __radd__ = __add__

    def __neg__(self):
        if not self.num:
            return self
        return Scalar(_pneg(self.num), self.den, self.shift, _canonical=True)

    def __sub__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return ZERO
        shift = self.shift + other.shift
        if self.den == (1,) and other.den == (1,):
            return Scalar(_pmul(self.num, other.num), (1,), shift, _canonical=True)
        return Scalar(_pmul(self.num, other.num), _pmul(self.den, other.den), shift)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.num:
            raise ArithmeticError_("division by zero Scalar")
        lead = self.num[-1]
        num = tuple(Fraction(v) / lead for v in self.den)
        den = tuple(Fraction(v) / lead for v in self.num)
        return Scalar(_norm_coeffs(num), _norm_coeffs(den), -self.shift, _canonical=True)

    def __truediv__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # involution -----------------------------------------------------------
    def bar(self) -> "Scalar":
        """Substitute q -> 1/q (rational coefficients are real)."""
        if not self.num:
            return self
        dn = len(self.num) - 1
        dd = len(self.den) - 1
        num = _subst_inverse(self.num)
        den = _subst_inverse(self.den)
        shift = -self.shift - dn + dd
        return Scalar(num, den, shift)

    # evaluation -----------------------------------------------------------
    def evaluate(self, q0) -> Fraction:
        q0 = Fraction(q0)
        if q0 == 0:
            raise ArithmeticError_("evaluation at q = 0")

        def ev(p):
            acc = Fraction(0)
            for c in reversed(p):
                acc = acc * q0 + c
            return acc

        d = ev(self.den)
        if d == 0:
            raise ArithmeticError_("pole at q = %s" % q0)
        return ev(self.num) / d * q0 ** self.shift

    # comparison / hashing -------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar.const(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den and self.shift == other.shift

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den, self.shift))
        return self._hash

    # text -----------------------------------------------------------------
    def laurent_terms(self):
        """``[(exponent, coefficient)]`` if this is a Laurent polynomial."""
        if self.den != (1,):
            raise ValueError("not a Laurent polynomial")
        return [(self.shift + i, c) for i, c in enumerate(self.num) if c]

    def __str__(self):
        if self.den == (1,):
            return _laurent_str(self.num, self.shift)
        n = _laurent_str(self.num, self.shift)
        d = _laurent_str(self.den, 0)
        return "(%s)/(%s)" % (n, d)

    def __repr__(self):
        return "Scalar(%s)" % self

    def needs_parens(self) -> bool:
        """True when the rendering is a sum or quotient."""
        if self.den != (1,):
            return False  # already parenthesised
        return sum(1 for c in self.num if c) > 1

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        return parse_scalar(text)


def _canonicalize(num: Poly, den: Poly, shift: int):
    if not den:
        raise ArithmeticError_("zero denominator")
    if not num:
        return (), (1,), 0
    k = _low_order(num)
    if k:
        num = num[k:]
        shift += k
    k = _low_order(den)
    if k:
        den = den[k:]
        shift -= k
    if len(den) > 1:
        g = _pgcd(num, den)
        if len(g) > 1:
            num, _ = _pdivmod(num, g)
            den, _ = _pdivmod(den, g)
    lead = den[-1]
    if lead != 1:
        num = tuple(Fraction(v) / lead for v in num)
        den = tuple(Fraction(v) / lead for v in den)
    return _norm_coeffs(num), _norm_coeffs(den), shift


def _fmt_coeff(c) -> str:
    return str(c)


def _laurent_str(poly: Poly, shift: int) -> str:
    terms = [(shift + i, c) for i, c in enumerate(poly) if c]
    if not terms:
        return "0"
    terms.sort(key=lambda t: -t[0])
    out = []
    for idx, (e, c) in enumerate(terms):
        neg = c < 0
        a = -c if neg else c
        if e == 0:
            body = _fmt_coeff(a)
        else:
            qp = "q" if e == 1 else "q^%d" % e
            body = qp if a == 1 else "%s*%s" % (_fmt_coeff(a), qp)
        if idx == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


# ---------------------------------------------------------------------------
# parsing: sums/products/quotients of rationals and powers of q

_TOKEN = re.compile(r"\s*(?:(\d+)|(q)|(\^)|([-+*/()]))")


def parse_scalar(text: str) -> Scalar:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ScalarParseError("unexpected character %r at position %d" % (text[pos], pos))
        tokens.append(m.group(m.lastindex))
        pos = m.end()
    p = _ScalarParser(tokens)
    val = p.expr()
    if p.i != len(tokens):
        raise ScalarParseError("trailing input at token %d" % p.i)
    return val


class _ScalarParser:
    def __init__(self, tokens):
        self.t = tokens
        self.i = 0

    def peek(self):
        return self.t[self.i] if self.i < len(self.t) else None

    def take(self, want=None):
        tok = self.peek()
        if tok is None or (want is not None and tok != want):
            raise ScalarParseError("expected %r, got %r" % (want, tok))
        self.i += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        val = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.factor()
        while True:
            tok = self.peek()
            if tok in ("*", "/"):
                self.take()
                rhs = self.factor()
                val = val * rhs if tok == "*" else val / rhs
            elif tok is not None and (tok == "q" or tok == "(" or tok.isdigit()):
                val = val * self.factor()
            else:
                return val

    def factor(self):
        tok = self.peek()
        if tok == "(":
            self.take()
            base = self.expr()
            self.take(")")
        elif tok == "q":
            self.take()
            base = Q
        elif tok is not None and tok.isdigit():
            self.take()
            base = Scalar.const(int(tok))
        else:
            raise ScalarParseError("unexpected token %r" % tok)
        if self.peek() == "^":
            self.take()
            sgn = 1
            if self.peek() in ("-", "+"):
                sgn = -1 if self.take() == "-" else 1
            n = int(self.take())
            base = base ** (sgn * n)
        return base


ZERO = Scalar((), (1,), 0, _canonical=True)
ONE = Scalar((1,), (1,), 0, _canonical=True)
Q = Scalar((1,), (1,), 1, _canonical=True)


def q_integer(n: int) -> Scalar:
    """``[n]`` in base ``q**-2``: ``1 + q^-2 + ... + q^(-2(n-1))``."""
    if n < 0:
        raise ValueError("q_integer needs n >= 0")
    return Scalar.laurent({-2 * k: 1 for k in range(n)})
