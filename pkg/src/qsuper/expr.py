"""Text syntax for algebra elements.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (['*'|'/'] factor)*      juxtaposition multiplies
    factor := atom ['^' int]
    atom   := INT | NAME | NAME '[' int ',' int ']' | '(' expr ')'

Names are resolved against a context: scalar symbols first, then named
elements, then generators.  Products are taken in the context's algebra, so
evaluation already returns normal forms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

__all__ = ["ExprError", "Num", "Name", "Pow", "Mul", "Div", "Add", "parse", "to_text",
           "Parser", "evaluate", "evaluate_in", "evaluate_terms"]


class ExprError(ValueError):
    pass


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Name:
    ident: str


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


@dataclass(frozen=True)
class Mul:
    factors: tuple


@dataclass(frozen=True)
class Div:
    num: object
    den: object


@dataclass(frozen=True)
class Add:
    terms: tuple  # of (sign, node), sign in {1, -1}


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_']*(?:\[\s*-?\d+\s*,\s*-?\d+\s*\])?)|(\S))")


def _tokens(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", re.sub(r"\s+", "", name)))
        else:
            if op not in "+-*/^()":
                raise ExprError("unexpected character %r at column %d" % (op, m.start(3) + 1))
            out.append(("op", op))
        pos = m.end()
    return out


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def _peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def _next(self):
        tok = self._peek()
        self.i += 1
        return tok

    def _expect(self, op):
        kind, val = self._next()
        if kind != "op" or val != op:
            raise ExprError("expected %r in %r" % (op, self.text))

    def parse(self):
        if not self.toks:
            raise ExprError("empty expression")
        node = self.expr()
        if self.i != len(self.toks):
            raise ExprError("unexpected %r in %r" % (self._peek()[1], self.text))
        return node

    def expr(self):
        terms = []
        sign = 1
        kind, val = self._peek()
        if kind == "op" and val in "+-":
            self._next()
            sign = -1 if val == "-" else 1
        terms.append((sign, self.term()))
        while True:
            kind, val = self._peek()
            if kind == "op" and val in "+-":
                self._next()
                terms.append((-1 if val == "-" else 1, self.term()))
            else:
                break
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Add(tuple(terms))

    def _starts_factor(self):
        kind, val = self._peek()
        return kind in ("num", "name") or (kind == "op" and val == "(")

    def term(self):
        factors = [self.factor()]
        while True:
            kind, val = self._peek()
            if kind == "op" and val == "*":
                self._next()
                factors.append(self.factor())
            elif kind == "op" and val == "/":
                self._next()
                left = factors[0] if len(factors) == 1 else Mul(tuple(factors))
                factors = [Div(left, self.factor())]
            elif self._starts_factor():
                factors.append(self.factor())
            else:
                break
        return factors[0] if len(factors) == 1 else Mul(tuple(factors))

    def factor(self):
        base = self.atom()
        kind, val = self._peek()
        if kind == "op" and val == "^":
            self._next()
            return Pow(base, self._int())
        return base

    def _int(self):
        kind, val = self._next()
        if kind == "op" and val == "(":
            n = self._int()
            self._expect(")")
            return n
        if kind == "op" and val == "-":
            kind, val = self._next()
            if kind != "num":
                raise ExprError("expected an integer exponent in %r" % self.text)
            return -val
        if kind != "num":
            raise ExprError("expected an integer exponent in %r" % self.text)
        return val

    def atom(self):
        kind, val = self._next()
        if kind == "num":
            return Num(val)
        if kind == "name":
            return Name(val)
        if kind == "op" and val == "(":
            node = self.expr()
            self._expect(")")
            return node
        raise ExprError("unexpected %r in %r" % (val, self.text))

    def word_pattern(self, alg):
        """A product of generator powers, kept as written: [(index, exp), ...]."""
        node = self.parse()
        factors = node.factors if isinstance(node, Mul) else (node,)
        out = []
        for f in factors:
            exp = 1
            if isinstance(f, Pow):
                f, exp = f.base, f.exp
            if not isinstance(f, Name) or f.ident not in alg.index:
                raise ExprError("rule left-hand side must be generator letters: %r" % self.text)
            out.append((alg.index[f.ident], exp))
        return out


def parse(text: str):
    return Parser(text).parse()


# -- printing -------------------------------------------------------------

def to_text(node) -> str:
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Name):
        return node.ident
    if isinstance(node, Pow):
        base = to_text(node.base)
        if not isinstance(node.base, (Num, Name)):
            base = "(%s)" % base
        return "%s^%d" % (base, node.exp)
    if isinstance(node, Mul):
        parts = []
        for k, f in enumerate(node.factors):
            s = to_text(f)
            if isinstance(f, (Add, Mul)) or (isinstance(f, Div) and k > 0):
                s = "(%s)" % s
            elif isinstance(f, Num) and k > 0:
                s = "* %s" % s
            parts.append(s)
        return " ".join(parts)
    if isinstance(node, Div):
        left = to_text(node.num)
        if isinstance(node.num, Add):
            left = "(%s)" % left
        right = to_text(node.den)
        if not isinstance(node.den, (Num, Name, Pow)):
            right = "(%s)" % right
        return "%s / %s" % (left, right)
    if isinstance(node, Add):
        out = []
        for k, (sign, t) in enumerate(node.terms):
            s = to_text(t)
            if isinstance(t, Add):
                s = "(%s)" % s
            if k == 0:
                out.append(("-" if sign < 0 else "") + s)
            else:
                out.append((" - " if sign < 0 else " + ") + s)
        return "".join(out)
    raise TypeError(node)


# -- evaluation -----------------------------------------------------------

class _Context:
    """Values are dicts word -> coefficient; products go through ``multiply_words``."""

    def __init__(self, alg, symbols, normal=True):
        self.alg = alg
        self.symbols = symbols
        self.normal = normal
        self.one = alg.one

    def const(self, c):
        return {(): c} if c else {}

    def name(self, ident):
        if ident in self.symbols:
            return self.const(self.symbols[ident])
        extras = getattr(self.alg, "extras", {})
        if ident in extras and self.normal:
            return dict(extras[ident].terms)
        if ident in self.alg.index:
            return {((self.alg.index[ident], 1),): self.one}
        raise ExprError("unknown name %r for %s (generators: %s)" % (
            ident, self.alg.name, ", ".join(self.alg.index)))

    def power(self, ident, n):
        if ident in self.symbols:
            c = self.symbols[ident]
            return self.const(c ** n if n >= 0 else (self.one / c) ** (-n))
        if ident in self.alg.index:
            g = self.alg.gens[self.alg.index[ident]]
            if n < 0 and not g.invertible:
                raise ExprError("%s is not invertible in %s" % (ident, self.alg.name))
            if not n:
                return {(): self.one}
            word = {((g.index, n),): self.one}
            return self.alg.normalize_terms(word) if self.normal else word
        return None

    def mul(self, a, b):
        out = {}
        from .engine import _addto, _compress, _units
        for w1, c1 in a.items():
            for w2, c2 in b.items():
                if self.normal:
                    prods = self.alg.multiply_words(w1, w2).items()
                else:
                    prods = [(_compress(_units(w1) + _units(w2)), self.one)]
                for w, c in prods:
                    _addto(out, w, c1 * c2 * c)
        return out


def evaluate(node, ctx):
    from .engine import _addto
    if isinstance(node, Num):
        return ctx.const(ctx.one * node.value)
    if isinstance(node, Name):
        return ctx.name(node.ident)
    if isinstance(node, Pow):
        if isinstance(node.base, Name):
            direct = ctx.power(node.base.ident, node.exp)
            if direct is not None:
                return direct
        base = evaluate(node.base, ctx)
        if node.exp < 0:
            if set(base) - {()}:
                raise ExprError("negative power of a non-scalar expression")
            c = base.get((), None)
            if c is None:
                raise ZeroDivisionError("zero to a negative power")
            return ctx.const((ctx.one / c) ** (-node.exp))
        out = ctx.const(ctx.one)
        for _ in range(node.exp):
            out = ctx.mul(out, base)
        return out
    if isinstance(node, Mul):
        out = ctx.const(ctx.one)
        for f in node.factors:
            out = ctx.mul(out, evaluate(f, ctx))
        return out
    if isinstance(node, Div):
        den = evaluate(node.den, ctx)
        if set(den) - {()}:
            raise ExprError("can only divide by scalars")
        if not den:
            raise ZeroDivisionError("division by zero")
        return ctx.mul(evaluate(node.num, ctx), ctx.const(ctx.one / den[()]))
    if isinstance(node, Add):
        out = {}
        for sign, t in node.terms:
            for w, c in evaluate(t, ctx).items():
                _addto(out, w, c if sign > 0 else -c)
        return out
    raise TypeError(node)


def _default_symbols(alg):
    from .qfield import Scalar
    syms = dict(getattr(alg, "symbols", None) or {})
    syms.setdefault("q", Scalar.qpow(1) if isinstance(alg.one, Scalar) else None)
    return {k: v for k, v in syms.items() if v is not None}


def evaluate_in(node, alg):
    """Evaluate an AST to a normal-form ``Element`` of ``alg``."""
    from .engine import Element
    if isinstance(node, str):
        node = parse(node)
    return Element(alg, evaluate(node, _Context(alg, _default_symbols(alg))))


def evaluate_terms(text: str, alg, symbols) -> dict:
    """Evaluate without rewriting: words are concatenated as written."""
    return evaluate(parse(text), _Context(alg, symbols, normal=False))


class _ScalarContext(_Context):
    def __init__(self, symbols, one):
        self.symbols = symbols
        self.one = one
        self.normal = True

    def name(self, ident):
        if ident in self.symbols:
            return self.const(self.symbols[ident])
        raise ExprError("unknown scalar symbol %r" % ident)

    def power(self, ident, n):
        if ident in self.symbols:
            return _Context.power(self, ident, n)
        raise ExprError("unknown scalar symbol %r" % ident)

    def mul(self, a, b):
        if not a or not b:
            return {}
        return self.const(a[()] * b[()])


def evaluate_scalar(text: str, symbols: dict, one=None):
    """Evaluate a generator-free expression such as ``(r - 1) q^-1``."""
    from .qfield import ONE
    one = ONE if one is None else one
    val = evaluate(parse(text), _ScalarContext(symbols, one))
    return val.get((), one - one)
