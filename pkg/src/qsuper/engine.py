"""Normal forms in superalgebras presented by quadratic rewrite rules.

Words are tuples of ``(generator_index, exponent)`` pairs.  Generators are
indexed by their position in the monomial order, so a word is normal when its
indices strictly increase.  Rules act on *unit letters* ``(g, +1)`` or
``(g, -1)``; a letter ``g^e`` is split into ``|e|`` unit letters whenever a
rule has to be applied to it.

Coefficients are duck-typed: anything closed under ``+ - * /`` with a
canonical ``==`` and ``bool`` (``Scalar`` by default, sympy ``FracElement``
for symbolic rule constants).
"""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .qfield import ONE, Scalar

__all__ = [
    "Generator",
    "Presentation",
    "Element",
    "Tensor",
    "Morphism",
    "Derivation",
    "PresentationError",
    "MorphismError",
    "basis_window",
    "check_confluence",
    "load_presentation",
    "parse_presentation",
]

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class PresentationError(ValueError):
    """Malformed presentation, or an element that does not belong to it."""


class MorphismError(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    name: str
    parity: int = 0
    form: int = 0
    invertible: bool = False
    index: int = 0
    tier: int | None = None

    @property
    def degree(self) -> int:
        """Total Z2-degree used for every Koszul sign."""
        return (self.parity + self.form) % 2

    @property
    def level(self) -> int:
        return self.form if self.tier is None else self.tier


def _sign(e: int) -> int:
    return 1 if e > 0 else -1


def _units(word) -> list:
    out = []
    for g, e in word:
        s = _sign(e)
        out.extend([(g, s)] * abs(e))
    return out


def _compress(units) -> tuple:
    out = []
    for g, s in units:
        if out and out[-1][0] == g:
            e = out[-1][1] + s
            if e:
                out[-1] = (g, e)
            else:
                out.pop()
        else:
            out.append((g, s))
    return tuple(out)


def _addto(acc: dict, word, c):
    v = acc.get(word)
    if v is None:
        if c:
            acc[word] = c
    else:
        v = v + c
        if v:
            acc[word] = v
        else:
            del acc[word]


class Presentation:
    """Generators plus one rewrite rule per out-of-order unit-letter pair."""

    def __init__(self, name: str, generators: list[Generator], rules: dict, one=ONE,
                 derive_inverses: bool = True, check: bool = True, symbols: dict | None = None):
        self.name = name
        self.gens = [Generator(g.name, g.parity, g.form, g.invertible, i, g.tier)
                     for i, g in enumerate(generators)]
        self.index = {g.name: g.index for g in self.gens}
        if len(self.index) != len(self.gens):
            raise PresentationError("duplicate generator names in %s" % name)
        self.one = one
        self.zero = one - one
        self.symbols = dict(symbols or {})
        self.rules: dict = {}
        for (a, b), rhs in rules.items():
            self.rules[(a, b)] = {w: c for w, c in rhs.items() if c}
        if derive_inverses:
            self._derive_inverse_rules()
        self._cache: dict = {}
        self._strategy_cache: dict = {}
        if check:
            self._check_complete()
            self._check_decreasing()
        self.extras: dict = {}

    # -- construction helpers -------------------------------------------
    def gen(self, name: str) -> Generator:
        try:
            return self.gens[self.index[name]]
        except KeyError:
            raise PresentationError("unknown generator %r in %s (alphabet: %s)"
                                    % (name, self.name, ", ".join(self.index))) from None

    def unit_letters(self):
        for g in self.gens:
            yield (g.index, 1)
            if g.invertible:
                yield (g.index, -1)

    def _derive_inverse_rules(self):
        for (a, b), rhs in list(self.rules.items()):
            if a[1] != 1 or b[1] != 1 or len(rhs) != 1:
                continue
            (word, c), = rhs.items()
            if word != ((b[0], 1), (a[0], 1)):
                continue
            ga, gb = self.gens[a[0]], self.gens[b[0]]
            if ga.invertible:
                self.rules.setdefault(((a[0], -1), b), {((b[0], 1), (a[0], -1)): self.one / c})
            if gb.invertible:
                self.rules.setdefault((a, (b[0], -1)), {((b[0], -1), (a[0], 1)): self.one / c})
            if ga.invertible and gb.invertible:
                self.rules.setdefault(((a[0], -1), (b[0], -1)), {((b[0], -1), (a[0], -1)): c})

    def _check_complete(self):
        letters = list(self.unit_letters())
        for a in letters:
            for b in letters:
                if a[0] > b[0] and (a, b) not in self.rules:
                    raise PresentationError("%s: no rule for %s %s" % (
                        self.name, self.format_word((a,)), self.format_word((b,))))
        for g in self.gens:
            if g.degree == 1 and not g.invertible and ((g.index, 1), (g.index, 1)) not in self.rules:
                raise PresentationError("%s: odd generator %s needs a square rule" % (self.name, g.name))

    def measure(self, units) -> tuple:
        form = sum(self.gens[g].form for g, _ in units)
        lvl = [self.gens[g].level for g, _ in units]
        tier_inv = sum(1 for i, j in itertools.combinations(range(len(units)), 2) if lvl[i] > lvl[j])
        inv = sum(1 for i, j in itertools.combinations(range(len(units)), 2)
                  if units[i][0] > units[j][0])
        return (form, tier_inv, len(units), inv)

    def _check_decreasing(self):
        for (a, b), rhs in self.rules.items():
            lhs = self.measure([a, b])
            for w in rhs:
                if not self.measure(_units(w)) < lhs:
                    raise PresentationError("%s: rule %s %s -> %s does not decrease the order" % (
                        self.name, self.format_word((a,)), self.format_word((b,)), self.format_word(w)))

    # -- degrees -----------------------------------------------------------
    def word_degree(self, word) -> int:
        return sum(self.gens[g].degree * e for g, e in word) % 2

    def word_form(self, word) -> int:
        return sum(self.gens[g].form * e for g, e in word)

    # -- normal form by insertion ----------------------------------------
    def _times_letter(self, w: tuple, letter) -> dict:
        key = (w, letter)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        h, f = letter
        if not w:
            out = {((h, f),): self.one}
        else:
            g, e = w[-1]
            rest = w[:-1]
            last = (g, _sign(e))
            rule = self.rules.get((last, letter)) if g >= h else None
            if g < h:
                out = {w + ((h, f),): self.one}
            elif g == h and rule is None:
                ne = e + f
                out = {(rest + ((g, ne),) if ne else rest): self.one}
            else:
                if rule is None:
                    raise PresentationError("%s: no rule for %s %s" % (
                        self.name, self.format_word((last,)), self.format_word((letter,))))
                prefix = rest + ((g, e - last[1]),) if e != last[1] else rest
                out = {}
                for word, c in rule.items():
                    for w2, c2 in self._times_word(prefix, word).items():
                        _addto(out, w2, c * c2)
        self._cache[key] = out
        return out

    def _times_word(self, w: tuple, word) -> dict:
        cur = {w: self.one}
        for g, e in word:
            s = _sign(e)
            for _ in range(abs(e)):
                nxt: dict = {}
                for w1, c1 in cur.items():
                    for w2, c2 in self._times_letter(w1, (g, s)).items():
                        _addto(nxt, w2, c1 * c2)
                cur = nxt
        return cur

    def normalize_terms(self, terms) -> dict:
        out: dict = {}
        for word, c in terms.items() if isinstance(terms, dict) else terms:
            if not c:
                continue
            self._validate(word)
            for w2, c2 in self._times_word((), word).items():
                _addto(out, w2, c * c2)
        return out

    def _validate(self, word):
        for g, e in word:
            if not (0 <= g < len(self.gens)):
                raise PresentationError("%s: generator index %r out of range" % (self.name, g))
            if e < 0 and not self.gens[g].invertible:
                raise PresentationError("%s: %s is not invertible" % (self.name, self.gens[g].name))

    def multiply_words(self, a: tuple, b: tuple) -> dict:
        return self._times_word(a, b)

    # -- element construction ----------------------------------------------
    def element(self, terms=None) -> "Element":
        return Element(self, self.normalize_terms(terms or {}))

    def scalar(self, c) -> "Element":
        return Element(self, {(): c} if c else {})

    def unit(self) -> "Element":
        return self.scalar(self.one)

    def zero_element(self) -> "Element":
        return Element(self, {})

    def letter(self, name: str, exp: int = 1) -> "Element":
        g = self.gen(name)
        if exp < 0 and not g.invertible:
            raise PresentationError("%s: %s is not invertible" % (self.name, name))
        if exp == 0:
            return self.unit()
        return Element(self, {((g.index, exp),): self.one})

    def word(self, *spec) -> "Element":
        """``word('x', ('y', -1), 'theta')`` -> normal form of the product."""
        w = []
        for s in spec:
            name, e = (s, 1) if isinstance(s, str) else s
            w.append((self.gen(name).index, e))
        return self.element({tuple(w): self.one})

    def __getitem__(self, name: str) -> "Element":
        if name in self.extras:
            return self.extras[name]
        return self.letter(name)

    def parse(self, text: str) -> "Element":
        from .expr import evaluate_in, parse
        return evaluate_in(parse(text), self)

    # -- printing ------------------------------------------------------------
    def format_word(self, word) -> str:
        parts = []
        for g, e in word:
            n = self.gens[g].name
            parts.append(n if e == 1 else "%s^%d" % (n, e))
        return " ".join(parts)

    def word_key(self, word):
        return (sum(abs(e) for _, e in word), tuple(g for g, _ in word), tuple(e for _, e in word))

    # -- strategy-based rewriting (for confluence) ---------------------
    def _reducible(self, units, i) -> bool:
        (g, s), (h, t) = units[i], units[i + 1]
        if g > h:
            return True
        if g == h:
            return s == -t or ((g, s), (h, t)) in self.rules
        return False

    def reduce_with_strategy(self, units: tuple, rightmost: bool) -> dict:
        key = (units, rightmost)
        hit = self._strategy_cache.get(key)
        if hit is not None:
            return hit
        positions = range(len(units) - 2, -1, -1) if rightmost else range(len(units) - 1)
        pos = next((i for i in positions if self._reducible(units, i)), None)
        if pos is None:
            out = {_compress(units): self.one}
        else:
            a, b = units[pos], units[pos + 1]
            if a[0] == b[0] and a[1] == -b[1]:
                rhs = {(): self.one}
            else:
                rhs = self.rules[(a, b)]
            out = {}
            for word, c in rhs.items():
                new = units[:pos] + tuple(_units(word)) + units[pos + 2:]
                for w2, c2 in self.reduce_with_strategy(new, rightmost).items():
                    _addto(out, w2, c * c2)
        self._strategy_cache[key] = out
        return out

    def clear_caches(self):
        self._cache.clear()
        self._strategy_cache.clear()

    def __repr__(self):
        return "Presentation(%s: %s)" % (self.name, ", ".join(g.name for g in self.gens))


# ---------------------------------------------------------------------------

def _coef_str(c) -> tuple[str, bool]:
    """Rendering of a coefficient and whether it is a negated simple term."""
    s = str(c)
    if isinstance(c, Scalar):
        compound = c.needs_parens()
    else:
        body = s[1:] if s.startswith("-") else s
        compound = any(op in body for op in ("+", " - ")) and not (body.startswith("(") and body.endswith(")") and "/" not in body)
    return s, compound


def format_terms(terms: dict, fmt_word: Callable, key: Callable) -> str:
    if not terms:
        return "0"
    out = []
    for idx, word in enumerate(sorted(terms, key=key)):
        c = terms[word]
        s, compound = _coef_str(c)
        wtxt = fmt_word(word)
        neg = False
        if compound:
            body = "(%s)" % s
        else:
            if s.startswith("-"):
                neg, s = True, s[1:]
            body = s
        if wtxt:
            if body == "1":
                text = wtxt
            else:
                text = "%s %s" % (body, wtxt)
        else:
            text = body
        if idx == 0:
            out.append(("-" if neg else "") + text)
        else:
            out.append((" - " if neg else " + ") + text)
    return "".join(out)


class Element:
    """Finite sum of coefficient-weighted normal words of one presentation."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: Presentation, terms: dict):
        self.alg = alg
        self.terms = terms

    def _coerce(self, other):
        if isinstance(other, Element):
            if other.alg is not self.alg:
                raise PresentationError("mixing %s and %s elements" % (self.alg.name, other.alg.name))
            return other
        if isinstance(other, (Tensor,)):
            return NotImplemented
        return self.alg.scalar(self.alg.one * other)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for w, c in other.terms.items():
            _addto(out, w, c)
        return Element(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.alg, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Element":
        if not c:
            return Element(self.alg, {})
        return Element(self.alg, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            if other.alg is not self.alg:
                raise PresentationError("mixing %s and %s elements" % (self.alg.name, other.alg.name))
            out: dict = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    for w, c in self.alg.multiply_words(w1, w2).items():
                        _addto(out, w, c1 * c2 * c)
            return Element(self.alg, out)
        if isinstance(other, Tensor):
            return NotImplemented
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers of elements are not supported")
        out = self.alg.unit()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.alg is other.alg and self.terms == other.terms
        if not self.terms:
            return not other
        try:
            return self == self._coerce(other)
        except Exception:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, word) -> object:
        return self.terms.get(word, self.alg.zero)

    def constant_term(self):
        return self.terms.get((), self.alg.zero)

    def map_coefficients(self, f) -> "Element":
        out = {}
        for w, c in self.terms.items():
            v = f(c)
            if v:
                out[w] = v
        return Element(self.alg, out)

    def is_homogeneous(self) -> bool:
        return len({self.alg.word_degree(w) for w in self.terms}) <= 1

    def degree(self) -> int:
        degs = {self.alg.word_degree(w) for w in self.terms}
        if len(degs) > 1:
            raise ValueError("inhomogeneous element")
        return degs.pop() if degs else 0

    def invert_monomial(self) -> "Element":
        if len(self.terms) != 1:
            raise MorphismError("cannot invert a sum: %s" % self)
        (w, c), = self.terms.items()
        for g, _ in w:
            if not self.alg.gens[g].invertible:
                raise MorphismError("cannot invert %s: %s is not invertible" % (self, self.alg.gens[g].name))
        inv = tuple((g, -e) for g, e in reversed(w))
        return self.alg.element({inv: self.alg.one / c})

    def __str__(self):
        return format_terms(self.terms, self.alg.format_word, self.alg.word_key)

    def __repr__(self):
        return "<%s: %s>" % (self.alg.name, self)


# ---------------------------------------------------------------------------

class Tensor:
    """Element of A1 (x) A2 (x) ... with Koszul-signed multiplication."""

    __slots__ = ("algs", "terms")

    def __init__(self, algs: tuple, terms: dict):
        self.algs = tuple(algs)
        self.terms = terms

    @classmethod
    def of(cls, *elements: Element) -> "Tensor":
        algs = tuple(e.alg for e in elements)
        terms: dict = {}
        for combo in itertools.product(*(e.terms.items() for e in elements)):
            key = tuple(w for w, _ in combo)
            c = algs[0].one
            for _, v in combo:
                c = c * v
            _addto(terms, key, c)
        return cls(algs, terms)

    @classmethod
    def unit(cls, algs) -> "Tensor":
        return cls(algs, {tuple(() for _ in algs): algs[0].one})

    def _check(self, other):
        if other.algs != self.algs:
            raise PresentationError("tensor factor mismatch")

    def __add__(self, other):
        if not isinstance(other, Tensor):
            if not other:
                return self
            other = Tensor.unit(self.algs).scale(other)
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _addto(out, k, c)
        return Tensor(self.algs, out)

    __radd__ = __add__

    def __neg__(self):
        return Tensor(self.algs, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Tensor":
        if not c:
            return Tensor(self.algs, {})
        return Tensor(self.algs, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other):
        if not isinstance(other, Tensor):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        algs = self.algs
        n = len(algs)
        for k1, c1 in self.terms.items():
            d1 = [algs[i].word_degree(k1[i]) for i in range(n)]
            for k2, c2 in other.terms.items():
                sign = 0
                for j in range(n):
                    dj = algs[j].word_degree(k2[j])
                    if dj:
                        sign += sum(d1[j + 1:])
                coef = c1 * c2
                if sign % 2:
                    coef = -coef
                slot_terms = [algs[i].multiply_words(k1[i], k2[i]).items() for i in range(n)]
                for combo in itertools.product(*slot_terms):
                    c = coef
                    for _, v in combo:
                        c = c * v
                    _addto(out, tuple(w for w, _ in combo), c)
        return Tensor(algs, out)

    def __eq__(self, other):
        if isinstance(other, Tensor):
            return self.algs == other.algs and self.terms == other.terms
        if not other:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def invert_monomial(self) -> "Tensor":
        if len(self.terms) != 1:
            raise MorphismError("cannot invert a tensor sum")
        (key, c), = self.terms.items()
        parts = [Element(a, {w: a.one}).invert_monomial() for a, w in zip(self.algs, key)]
        # (a (x) b)^-1 = (-1)^{|a||b|} a^-1 (x) b^-1, and even letters only here
        return Tensor.of(*parts).scale(self.algs[0].one / c)

    def map_slots(self, maps: list) -> "Tensor":
        """Apply one even linear map per slot; a map may return Element or Tensor."""
        out = None
        for key, c in self.terms.items():
            pieces = []
            for f, a, w in zip(maps, self.algs, key):
                elem = Element(a, {w: a.one})
                pieces.append(f(elem) if f is not None else elem)
            t = _concat_tensor(pieces)
            out = t.scale(c) if out is None else out + t.scale(c)
        if out is None:
            return Tensor(tuple(self._image_algs(maps)), {})
        return out

    def _image_algs(self, maps):
        return self.algs

    def multiply_out(self) -> Element:
        """m: A (x) A -> A, plain concatenation (no sign)."""
        alg = self.algs[0]
        out: dict = {}
        for key, c in self.terms.items():
            acc = {(): alg.one}
            for w in key:
                nxt: dict = {}
                for w1, c1 in acc.items():
                    for w2, c2 in alg.multiply_words(w1, w).items():
                        _addto(nxt, w2, c1 * c2)
                acc = nxt
            for w, v in acc.items():
                _addto(out, w, c * v)
        return Element(alg, out)

    def __str__(self):
        def fmt(key):
            return " ⊗ ".join(a.format_word(w) or "1" for a, w in zip(self.algs, key))

        def key_of(key):
            return tuple(a.word_key(w) for a, w in zip(self.algs, key))

        return _format_tensor(self.terms, fmt, key_of)

    def __repr__(self):
        return "<Tensor %s>" % self


def _format_tensor(terms, fmt, key):
    if not terms:
        return "0"
    out = []
    for idx, k in enumerate(sorted(terms, key=key)):
        s, compound = _coef_str(terms[k])
        neg = False
        if compound:
            s = "(%s)" % s
        elif s.startswith("-"):
            neg, s = True, s[1:]
        body = fmt(k) if s == "1" else "%s %s" % (s, fmt(k))
        out.append(("-" if neg else "") + body if idx == 0 else (" - " if neg else " + ") + body)
    return "".join(out)


def _concat_tensor(pieces) -> Tensor:
    tens = []
    for p in pieces:
        tens.append(p if isinstance(p, Tensor) else Tensor.of(p))
    algs = tuple(a for t in tens for a in t.algs)
    out: dict = {}
    for combo in itertools.product(*(t.terms.items() for t in tens)):
        key = tuple(w for k, _ in combo for w in k)
        c = algs[0].one
        for _, v in combo:
            c = c * v
        _addto(out, key, c)
    return Tensor(algs, out)


def tensor_multiply(s: Tensor, t: Tensor) -> Tensor:
    return s * t


# ---------------------------------------------------------------------------

class Morphism:
    """Multiplicative (or signed anti-multiplicative) extension of generator images.

    ``images`` maps generator names to target values (``Element`` or
    ``Tensor``); images of inverse letters default to the monomial inverse.
    """

    def __init__(self, source: Presentation, images: dict, target_unit, anti: bool = False,
                 conjugate: bool = False, inverse_images: dict | None = None, name: str = "map"):
        self.source = source
        self.anti = anti
        self.conjugate = conjugate
        self.name = name
        self.unit = target_unit
        self.letter_images: dict = {}
        inverse_images = inverse_images or {}
        for g in source.gens:
            if g.name not in images:
                raise MorphismError("%s: no image for generator %s" % (name, g.name))
            self.letter_images[(g.index, 1)] = images[g.name]
            if g.invertible:
                if g.name in inverse_images:
                    inv = inverse_images[g.name]
                else:
                    try:
                        inv = images[g.name].invert_monomial()
                    except MorphismError as exc:
                        raise MorphismError("%s: image of %s is not invertible (%s)" % (name, g.name, exc)) from None
                self.letter_images[(g.index, -1)] = inv
        self._cache: dict = {}

    def map_word(self, word):
        hit = self._cache.get(word)
        if hit is not None:
            return hit
        units = _units(word)
        if self.anti:
            odd = sum(self.source.gens[g].degree for g, _ in units)
            sign = -1 if (odd * (odd - 1) // 2) % 2 else 1
            units = list(reversed(units))
        else:
            sign = 1
        out = self.unit
        for u in units:
            out = out * self.letter_images[u]
        if sign < 0:
            out = -out
        self._cache[word] = out
        return out

    def __call__(self, elem: Element):
        if elem.alg is not self.source:
            raise PresentationError("%s expects %s elements, got %s" % (self.name, self.source.name, elem.alg.name))
        out = None
        for w, c in elem.terms.items():
            if self.conjugate:
                c = c.bar()
            t = self.map_word(w) * c
            out = t if out is None else out + t
        if out is None:
            return self.unit * self.source.zero
        return out

    def well_definedness(self) -> list:
        """Rules whose image (lhs - rhs) does not vanish, plus inverse-pair failures."""
        bad = []
        src = self.source
        for (a, b), rhs in src.rules.items():
            lhs_img = self.map_word(_compress_raw([a, b]))
            rhs_img = self(Element(src, dict(rhs))) if rhs else self.unit * src.zero
            res = lhs_img - rhs_img
            if res:
                bad.append(("%s %s" % (src.format_word((a,)), src.format_word((b,))),
                            format_terms(rhs, src.format_word, src.word_key), res))
        for g in src.gens:
            if g.invertible:
                for pair in (((g.index, 1), (g.index, -1)), ((g.index, -1), (g.index, 1))):
                    x, y = self.letter_images[pair[0]], self.letter_images[pair[1]]
                    prod = y * x if self.anti else x * y
                    res = prod - self.unit
                    if res:
                        bad.append(("%s %s" % (src.format_word((pair[0],)), src.format_word((pair[1],))), "1", res))
        return bad


class Derivation:
    """Graded derivation of the given parity extended from generator images."""

    def __init__(self, alg: Presentation, images: dict, parity: int = 1, inverse_images: dict | None = None):
        self.alg = alg
        self.parity = parity
        self.letter_images: dict = {}
        inverse_images = inverse_images or {}
        for g in alg.gens:
            img = images.get(g.name, alg.zero_element())
            self.letter_images[(g.index, 1)] = img
            if g.invertible:
                if g.name in inverse_images:
                    self.letter_images[(g.index, -1)] = inverse_images[g.name]
                else:
                    ginv = alg.letter(g.name, -1)
                    self.letter_images[(g.index, -1)] = -(ginv * img * ginv) * (
                        -1 if (parity and g.degree) else 1)
        self._cache: dict = {}

    def map_word(self, word) -> Element:
        hit = self._cache.get(word)
        if hit is not None:
            return hit
        units = _units(word)
        alg = self.alg
        out = alg.zero_element()
        deg = 0
        for i, u in enumerate(units):
            left = Element(alg, {_compress(units[:i]): alg.one}) if i else alg.unit()
            right = Element(alg, {_compress(units[i + 1:]): alg.one}) if i + 1 < len(units) else alg.unit()
            term = left * self.letter_images[u] * right
            out = out - term if (deg * self.parity) % 2 else out + term
            deg += alg.gens[u[0]].degree
        self._cache[word] = out
        return out

    def __call__(self, elem: Element) -> Element:
        out = self.alg.zero_element()
        for w, c in elem.terms.items():
            out = out + self.map_word(w).scale(c)
        return out


# ---------------------------------------------------------------------------

def basis_window(p: Presentation, bounds: dict) -> list[tuple]:
    """All normal words with exponent of each generator in the given inclusive range.

    Generators missing from ``bounds`` are held at exponent 0.
    """
    ranges = []
    for g in p.gens:
        lo, hi = bounds.get(g.name, (0, 0))
        if not g.invertible:
            lo = max(lo, 0)
        if g.degree == 1 and not g.invertible and ((g.index, 1), (g.index, 1)) in p.rules:
            rhs = p.rules[((g.index, 1), (g.index, 1))]
            if not rhs:
                hi = min(hi, 1)
        ranges.append(range(lo, hi + 1))
    words = []
    for exps in itertools.product(*ranges):
        words.append(tuple((i, e) for i, e in enumerate(exps) if e))
    words.sort(key=p.word_key)
    return words


def window_by_degree(p: Presentation, names: Iterable[str], max_degree: int, negative: bool = True) -> list[tuple]:
    """Normal words in ``names`` whose total |exponent| is at most ``max_degree``."""
    names = list(names)
    bounds = {}
    for n in names:
        g = p.gen(n)
        bounds[n] = (-max_degree if (negative and g.invertible) else 0, max_degree)
    return [w for w in basis_window(p, bounds) if sum(abs(e) for _, e in w) <= max_degree]


def _words_up_to(p: Presentation, n: int):
    letters = list(p.unit_letters())
    for k in range(n + 1):
        yield from itertools.product(letters, repeat=k)


def check_confluence(p: Presentation, degree_bound: int) -> list:
    """Words of length <= bound whose leftmost and rightmost reductions disagree."""
    bad = []
    for units in _words_up_to(p, degree_bound):
        left = p.reduce_with_strategy(tuple(units), False)
        right = p.reduce_with_strategy(tuple(units), True)
        if left != right:
            bad.append((p.format_word(_compress_raw(units)), Element(p, left), Element(p, right)))
    return bad


def _compress_raw(units):
    out = []
    for g, s in units:
        if out and out[-1][0] == g and _sign(out[-1][1]) == s:
            out[-1] = (g, out[-1][1] + s)
        else:
            out.append((g, s))
    return tuple(out)


# ---------------------------------------------------------------------------
# text format: "gen <name> parity=<0|1> form=<n> invertible=<bool>"
#              "rule <word> -> <element-expression>"

def parse_presentation(text: str, name: str = "P", symbols: dict | None = None, one=ONE) -> Presentation:
    from .expr import ExprError, Parser, evaluate_terms

    gens = []
    raw_rules = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "name":
            name = rest.strip()
        elif head == "gen":
            parts = rest.split()
            opts = {}
            for kv in parts[1:]:
                k, _, v = kv.partition("=")
                opts[k] = v
            gens.append(Generator(
                parts[0],
                parity=int(opts.get("parity", 0)),
                form=int(opts.get("form", 0)),
                invertible=opts.get("invertible", "false").lower() in ("true", "1", "yes"),
                tier=int(opts["tier"]) if "tier" in opts else None,
            ))
        elif head == "rule":
            lhs, arrow, rhs = rest.partition("->")
            if not arrow:
                raise PresentationError("line %d: rule needs '->'" % lineno)
            raw_rules.append((lineno, lhs.strip(), rhs.strip()))
        else:
            raise PresentationError("line %d: unknown directive %r" % (lineno, head))

    shell = Presentation(name, gens, {}, one=one, derive_inverses=False, check=False, symbols=symbols)
    rules = {}
    for lineno, lhs, rhs in raw_rules:
        try:
            lw = Parser(lhs).word_pattern(shell)
            terms = evaluate_terms(rhs, shell, symbols or {"q": Scalar.qpow(1)})
        except ExprError as exc:
            raise PresentationError("line %d: %s" % (lineno, exc)) from None
        units = _units(lw)
        if len(units) != 2:
            raise PresentationError("line %d: rule lhs must be two unit letters" % lineno)
        rules[(units[0], units[1])] = terms
    return Presentation(name, gens, rules, one=one, symbols=symbols)


def load_presentation(path, symbols: dict | None = None, one=ONE) -> Presentation:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    import os
    return parse_presentation(text, name=os.path.splitext(os.path.basename(str(path)))[0],
                              symbols=symbols, one=one)


def graded_union(a: Presentation, b: Presentation, name: str | None = None) -> Presentation:
    """Generators of ``a`` then ``b``; letters from different sides supercommute."""
    off = len(a.gens)

    def shift(word):
        return tuple((g + off, e) for g, e in word)

    gens = list(a.gens) + list(b.gens)
    rules = {k: dict(v) for k, v in a.rules.items()}
    for (l1, l2), rhs in b.rules.items():
        rules[((l1[0] + off, l1[1]), (l2[0] + off, l2[1]))] = {shift(w): c for w, c in rhs.items()}
    for gb in b.gens:
        for ga in a.gens:
            sign = -a.one if ga.degree and gb.degree else a.one
            rules[((gb.index + off, 1), (ga.index, 1))] = {((ga.index, 1), (gb.index + off, 1)): sign}
    return Presentation(name or "%s*%s" % (a.name, b.name), gens, rules, one=a.one,
                        symbols=a.symbols)


def embed(elem: Element, target: Presentation, offset: int = 0) -> Element:
    """Copy an element into a presentation that contains its generators at ``offset``."""
    return target.element({tuple((g + offset, e) for g, e in w): c for w, c in elem.terms.items()})
