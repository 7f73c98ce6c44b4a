"""The dual Hopf superalgebra: tangent functionals, their pairing with F, and Lie presentations.

Dual words are tuples over the letters ``"X"``, ``"Y"``, ``"Nab"`` and
``("G", a, b)``, the group-like q^(aX + bY).  Words are kept free (no
rewriting) so that relations can be tested through the pairing.
"""

from __future__ import annotations

import itertools
import re
from functools import lru_cache

from .data import presentation
from .engine import Element, Morphism, Presentation, Tensor, basis_window, window_by_degree
from .expr import Add, Div, ExprError, Mul, Name, Num, Pow, parse
from .hopf import F_hopf, HopfStructure
from .qfield import ONE, Q, ZERO, Scalar
from .report import Report
from .spaces import F

NABLA = "Nab"


def G(a: int, b: int):
    return ("G", a, b)


def letter_parity(letter) -> int:
    return 1 if letter == NABLA else 0


def word_parity(word) -> int:
    return sum(letter_parity(l) for l in word) % 2


def format_letter(letter) -> str:
    if isinstance(letter, tuple):
        return "G(%d,%d)" % letter[1:]
    return letter


class DualElement:
    """Finite combination of free dual words."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def word(cls, *letters) -> "DualElement":
        return cls({tuple(letters): ONE})

    @classmethod
    def unit(cls) -> "DualElement":
        return cls({(): ONE})

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in _coerce(other).terms.items():
            out[w] = out.get(w, ZERO) + c
        return DualElement(out)

    __radd__ = __add__

    def __neg__(self):
        return DualElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def scale(self, c) -> "DualElement":
        return DualElement({w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, DualElement):
            return self.scale(ONE * other)
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, ZERO) + c1 * c2
        return DualElement(out)

    def __rmul__(self, other):
        return self.scale(ONE * other)

    def __eq__(self, other):
        return isinstance(other, DualElement) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), repr(t[0]))):
            ws = " ".join(format_letter(l) for l in w)
            if not w:
                parts.append(str(c))
            elif c == ONE:
                parts.append(ws)
            elif c == -ONE:
                parts.append("-" + ws)
            else:
                cs = str(c)
                parts.append(("(%s)" % cs if c.needs_parens() else cs) + " " + ws)
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def _coerce(v) -> DualElement:
    if isinstance(v, DualElement):
        return v
    return DualElement({(): ONE * v})


X = DualElement.word("X")
Y = DualElement.word("Y")
NAB = DualElement.word(NABLA)
ONE_U = DualElement.unit()


def group_like(a: int, b: int) -> DualElement:
    return DualElement.word(G(a, b)) if (a or b) else ONE_U


def nabla_hat() -> DualElement:
    """Nab G(1,1), the odd generator whose coproduct takes the printed twisted form."""
    return NAB * group_like(1, 1)


# -- text syntax --------------------------------------------------------------

_G_CALL = re.compile(r"G\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


def _encode(m):
    a, b = (int(v) for v in m.groups())
    return "G_%s_%s" % (str(a).replace("-", "m"), str(b).replace("-", "m"))


def parse_dual(text: str) -> DualElement:
    """Parse e.g. ``X Nab - Nab X - Nab`` or ``G(1,1) Nab``; ``nabla`` and the symbol of nabla are accepted."""
    text = text.replace("∇", "Nab").replace("nabla", "Nab")
    return _eval(parse(_G_CALL.sub(_encode, text)))


def _eval(node) -> DualElement:
    if isinstance(node, Num):
        return _coerce(node.value)
    if isinstance(node, Name):
        ident = node.ident
        if ident == "q":
            return _coerce(Q)
        if ident in ("X", "Y", NABLA):
            return DualElement.word(ident)
        if ident in ("1", "one"):
            return ONE_U
        m = re.fullmatch(r"G_(m?\d+)_(m?\d+)", ident) or re.fullmatch(r"G\[(-?\d+),(-?\d+)\]", ident)
        if m:
            a, b = (int(v.replace("m", "-")) for v in m.groups())
            return group_like(a, b)
        raise ExprError("unknown dual letter %r (use X, Y, Nab, G(a,b), q)" % ident)
    if isinstance(node, Pow):
        base = _eval(node.base)
        if node.exp < 0:
            if set(base.terms) - {()}:
                raise ExprError("negative power of a non-scalar dual expression")
            return _coerce(ONE / base.terms[()] ** (-node.exp))
        out = ONE_U
        for _ in range(node.exp):
            out = out * base
        return out
    if isinstance(node, Mul):
        out = ONE_U
        for f in node.factors:
            out = out * _eval(f)
        return out
    if isinstance(node, Div):
        den = _eval(node.den)
        if set(den.terms) - {()} or not den:
            raise ExprError("can only divide by nonzero scalars")
        return _eval(node.num).scale(ONE / den.terms[()])
    if isinstance(node, Add):
        out = DualElement()
        for sign, t in node.terms:
            v = _eval(t)
            out = out + v if sign > 0 else out - v
        return out
    raise TypeError(node)


# -- the pairing ----------------------------------------------------------------

def _exponents(word) -> tuple:
    e = [0, 0, 0]
    for g, k in word:
        e[g] = k
    return tuple(e)


def pair_letter(letter, fword) -> object:
    m, n, k = _exponents(fword)
    if letter == "X":
        return ONE * m if k == 0 else ZERO
    if letter == "Y":
        return ONE * n if k == 0 else ZERO
    if letter == NABLA:
        return ONE if k == 1 else ZERO
    _, a, b = letter
    return Scalar.qpow(a * m + b * n) if k == 0 else ZERO


@lru_cache(maxsize=None)
def _coproduct_terms(fword) -> tuple:
    A = F()
    return tuple(F_hopf().coproduct(Element(A, {fword: A.one})).terms.items())


@lru_cache(maxsize=None)
def pair_word(word: tuple, fword: tuple):
    """<u, f> for a free dual word u and a normal word f of F."""
    if not word:
        return ONE if _exponents(fword)[2] == 0 else ZERO
    if len(word) == 1:
        return pair_letter(word[0], fword)
    head, rest = word[:1], word[1:]
    odd_rest = word_parity(rest)
    A = F()
    total = ZERO
    for (a, b), c in _coproduct_terms(fword):
        left = pair_word(head, a)
        if not left:
            continue
        right = pair_word(rest, b)
        if not right:
            continue
        sign = -1 if odd_rest and A.word_degree(a) else 1
        total = total + c * left * right * sign
    return total


def pair(u, f: Element):
    """Bilinear pairing; u may be a DualElement, dual text, or a Uq element."""
    if isinstance(u, str):
        u = parse_dual(u)
    elif isinstance(u, Element):
        u = from_uq(u)
    if f.alg is not F():
        f = F().element(dict(f.terms))
    total = ZERO
    for w, c in u.terms.items():
        for fw, fc in f.terms.items():
            v = pair_word(w, fw)
            if v:
                total = total + c * fc * v
    return total


def from_uq(e: Element) -> DualElement:
    """Read normal words of the Uq presentation as free dual words (G^e is G(e,e))."""
    U = e.alg
    out = DualElement()
    for w, c in e.terms.items():
        letters = []
        for g, k in w:
            name = U.gens[g].name
            if name == "G":
                letters.append(G(k, k))
            else:
                letters.extend([name] * k)
        out = out + DualElement({tuple(letters): c})
    return out


# -- Hopf structure of the dual -----------------------------------------------

def letter_coproduct(letter, twisted: bool) -> list:
    """(coef, left word, right word) triples.

    ``twisted`` gives Nab the coproduct forced by the pairing,
    Nab (x) G(-1,-1) + 1 (x) Nab; otherwise the printed Nab (x) 1 + G(1,1) (x) Nab.
    """
    if letter in ("X", "Y"):
        return [(ONE, (letter,), ()), (ONE, (), (letter,))]
    if letter == NABLA:
        if twisted:
            return [(ONE, (NABLA,), (G(-1, -1),)), (ONE, (), (NABLA,))]
        return [(ONE, (NABLA,), ()), (ONE, (G(1, 1),), (NABLA,))]
    return [(ONE, (letter,), (letter,))]


def dual_coproduct(u: DualElement, twisted: bool = True) -> dict:
    """{(left word, right word): coef} with the graded product of tensors."""
    out: dict = {}
    for w, c in u.terms.items():
        acc = {((), ()): c}
        for letter in w:
            nxt: dict = {}
            for (l, r), c1 in acc.items():
                for c2, a, b in letter_coproduct(letter, twisted):
                    sign = -1 if word_parity(r) and word_parity(a) else 1
                    key = (l + a, r + b)
                    nxt[key] = nxt.get(key, ZERO) + c1 * c2 * sign
            acc = nxt
        for k, v in acc.items():
            out[k] = out.get(k, ZERO) + v
    return {k: v for k, v in out.items() if v}


def pair_tensor(t: dict, fa: tuple, fb: tuple):
    """<sum u (x) v, a (x) b> with the sign (-1)^(p(v) p(a))."""
    A = F()
    total = ZERO
    for (u, v), c in t.items():
        sign = -1 if word_parity(v) and A.word_degree(fa) else 1
        x = pair_word(u, fa)
        if x:
            total = total + c * x * pair_word(v, fb) * sign
    return total


def dual_counit(u: DualElement):
    total = ZERO
    for w, c in u.terms.items():
        if all(isinstance(l, tuple) for l in w):
            total = total + c
    return total


def dual_antipode_letter(letter) -> DualElement:
    if letter in ("X", "Y"):
        return -DualElement.word(letter)
    if letter == NABLA:
        # from Nab (x) G(-1,-1) + 1 (x) Nab: S(Nab) G(-1,-1) + Nab = 0
        return -(NAB * group_like(1, 1))
    _, a, b = letter
    return group_like(-a, -b)


def dual_antipode(u: DualElement) -> DualElement:
    out = DualElement()
    for w, c in u.terms.items():
        odd = word_parity(w)
        sign = -1 if (odd * (odd - 1) // 2) % 2 else 1
        img = ONE_U
        for letter in reversed(w):
            img = img * dual_antipode_letter(letter)
        out = out + img.scale(c * sign)
    return out


# -- checks ----------------------------------------------------------------

DUAL_RELATIONS = {
    "[X, Y]": "X Y - Y X",
    "[X, Nab] - Nab": "X Nab - Nab X - Nab",
    "[Y, Nab] + Nab": "Y Nab - Nab Y + Nab",
    "Nab^2": "Nab Nab",
    "[G(1,1), Nab]": "G(1,1) Nab - Nab G(1,1)",
    "[G(1,1), X]": "G(1,1) X - X G(1,1)",
}


def monomial_window(lo: int, hi: int) -> list:
    return basis_window(F(), {"x": (lo, hi), "y": (lo, hi), "theta": (0, 1)})


def dual_relation_check(lo: int = -6, hi: int = 6) -> Report:
    rep = Report("dual relations")
    A = F()
    window = monomial_window(lo, hi)
    nh = nabla_hat()
    rels = {k: parse_dual(v) for k, v in DUAL_RELATIONS.items()}
    rels["[X, Nab^] - Nab^"] = X * nh - nh * X - nh
    rels["[Y, Nab^] + Nab^"] = Y * nh - nh * Y + nh
    rels["Nab^2 (hat)"] = nh * nh
    for label, rho in rels.items():
        for fw in window:
            rep.check("relation functional vanishes", "<%s, %s>" % (label, A.format_word(fw) or "1"),
                      pair(rho, Element(A, {fw: A.one})), ZERO)
    for fw in window:
        f = Element(A, {fw: A.one})
        rep.check("unit pairs as counit", f, pair(ONE_U, f), F_hopf().counit(f))
        for (a, b), (c, d) in (((1, 0), (0, 1)), ((1, 1), (-1, 2)), ((2, -1), (-1, -1))):
            rep.check("group-like multiplicativity", "G(%d,%d) G(%d,%d) on %s" % (a, b, c, d, f),
                      pair(group_like(a, b) * group_like(c, d), f), pair(group_like(a + c, b + d), f))
    return rep


def dual_coproduct_check(lo: int = -2, hi: int = 2) -> Report:
    rep = Report("dual coproduct")
    A = F()
    window = monomial_window(lo, hi)
    gens = {"X": (X, True), "Y": (Y, True), "Nab": (NAB, True), "Nab^ (printed coproduct)": (nabla_hat(), False),
            "G(1,1)": (group_like(1, 1), True), "X Nab": (X * NAB, True)}
    for label, (u, twisted) in gens.items():
        if twisted:
            t = dual_coproduct(u, twisted=True)
        else:
            t = _hat_coproduct()
        for fa in window:
            for fb in window:
                prod = Element(A, {fa: A.one}) * Element(A, {fb: A.one})
                rep.check("<u, fg> = <Delta u, f (x) g>", "%s on %s, %s" % (label, A.format_word(fa) or "1",
                                                                      A.format_word(fb) or "1"),
                          pair(u, prod), pair_tensor(t, fa, fb))
    printed_bad = 0
    t = dual_coproduct(NAB, twisted=False)
    for fa in window:
        for fb in window:
            prod = Element(A, {fa: A.one}) * Element(A, {fb: A.one})
            if pair(NAB, prod) != pair_tensor(t, fa, fb):
                printed_bad += 1
    rep.note("printed coproduct on the untwisted generator",
             "Nab (x) 1 + G(1,1) (x) Nab against <Nab, f g>", mismatches=printed_bad, pairs=len(window) ** 2)
    letters = ("X", "Y", NABLA, G(1, 1))
    for w in (w for n in range(4) for w in itertools.product(letters, repeat=n)):
        u = DualElement({w: ONE})
        rep.check("<u, 1> = counit", u, pair(u, A.unit()), dual_counit(u))
    for u in (X, Y, NAB, nabla_hat(), group_like(1, 1), group_like(2, -1)):
        S = dual_antipode(u)
        for fw in window:
            f = Element(A, {fw: A.one})
            rep.check("<S u, f> = <u, S f>", "%s on %s" % (u, f), pair(S, f), pair(u, F_hopf().antipode(f)))
    return rep


def _hat_coproduct() -> dict:
    """Nab^ (x) 1 + G(1,1) (x) Nab^ as free tensor words."""
    nh = (NABLA, G(1, 1))
    return {(nh, ()): ONE, ((G(1, 1),), nh): ONE}


# -- Lie superalgebra presentations ------------------------------------------------

@lru_cache(maxsize=None)
def hopf_lie(which: str) -> HopfStructure:
    names = {"MNPhi": "MNPhi", "HKTheta": "HKTheta", "Uq": "Uq", "Tfields": "Tfields"}
    if which not in names:
        raise KeyError("unknown Hopf-Lie presentation %r (have: %s)" % (which, ", ".join(names)))
    P = presentation(names[which])
    one, z = P.unit(), P.zero
    T = Tensor.of

    def prim(n):
        return T(P[n], one) + T(one, P[n])

    if which == "MNPhi":
        L, Phi = P["L"], P["Phi"]
        Li = P.letter("L", -1)
        return HopfStructure(P,
                             coproduct={"M": prim("M"), "N": prim("N"), "L": T(L, L), "Phi": T(Phi, L) + T(one, Phi)},
                             counit={"M": z, "N": z, "L": P.one, "Phi": z},
                             antipode={"M": -P["M"], "N": -P["N"], "L": Li, "Phi": -(Phi * Li)})
    if which == "HKTheta":
        L, Th = P["L"], P["Theta"]
        Li = P.letter("L", -1)
        return HopfStructure(P,
                             coproduct={"H": prim("H"), "K": prim("K"), "L": T(L, L), "Theta": T(Th, one) + T(L, Th)},
                             counit={"H": z, "K": z, "L": P.one, "Theta": z},
                             antipode={"H": -P["H"], "K": -P["K"], "L": Li, "Theta": -(Li * Th)})
    if which == "Uq":
        Gq, Nb = P["G"], P["Nab"]
        Gi = P.letter("G", -1)
        return HopfStructure(P,
                             coproduct={"X": prim("X"), "Y": prim("Y"), "G": T(Gq, Gq), "Nab": T(Nb, one) + T(Gq, Nb)},
                             counit={"X": z, "Y": z, "G": P.one, "Nab": z},
                             antipode={"X": -P["X"], "Y": -P["Y"], "G": Gi, "Nab": -(Gi * Nb)})
    h, k, L, Th = P["h"], P["k"], P["L"], P["Theta"]
    return HopfStructure(P,
                         coproduct={"h": T(h, h), "k": T(k, k), "L": T(L, L), "Theta": T(Th, one) + T(L, Th)},
                         counit={"h": P.one, "k": P.one, "L": P.one, "Theta": z},
                         antipode={"h": P.letter("h", -1), "k": P.letter("k", -1), "L": P.letter("L", -1),
                                   "Theta": -(P.letter("L", -1) * Th)})


HOPF_LIE = ("MNPhi", "HKTheta", "Uq", "Tfields")


def hopf_lie_check(which: str, degree: int = 4) -> Report:
    h = hopf_lie(which)
    P = h.alg
    window = window_by_degree(P, [g.name for g in P.gens], degree)
    return h.check(window, suite="hopf-lie:%s" % which)


@lru_cache(maxsize=None)
def correspondence(target: str) -> Morphism:
    """Uq -> MNPhi (X~ -> N, Y~ -> M, Nab -> Phi q^N) or Uq -> HKTheta (X~ -> -(H+K), Y~ -> H-K, Nab -> Theta)."""
    U = presentation("Uq")
    P = presentation(target)
    half = P.one / 2
    if target == "MNPhi":
        Li = P.letter("L", -1)
        images = {"X": (P["N"] + P["M"]).scale(half), "Y": (P["N"] - P["M"]).scale(half), "G": Li,
                  "Nab": P["Phi"] * Li}
    elif target == "HKTheta":
        images = {"X": -P["K"], "Y": -P["H"], "G": P["L"], "Nab": P["Theta"]}
    else:
        raise KeyError(target)
    return Morphism(U, images, P.unit(), name="Uq -> %s" % target)


def equivalence_check() -> Report:
    rep = Report("equivalence")
    U = presentation("Uq")
    Xt, Yt, Nb = U["X"] + U["Y"], U["X"] - U["Y"], U["Nab"]
    rels = {"[X~, Y~]": Xt * Yt - Yt * Xt, "[X~, Nab]": Xt * Nb - Nb * Xt,
            "[Y~, Nab] - 2 Nab": Yt * Nb - Nb * Yt - Nb.scale(U.one * 2), "Nab^2": Nb * Nb}
    for label, res in rels.items():
        rep.check("tilde relations", label, res, U.zero_element())
    src = hopf_lie("Uq")
    for target in ("MNPhi", "HKTheta"):
        phi = correspondence(target)
        tgt = hopf_lie(target)
        rep.checked["correspondence respects relations"] += len(U.rules)
        for rule, rhs, residual in phi.well_definedness():
            rep.require("correspondence respects relations", "%s: %s" % (target, rule), False, rule, rhs, residual)
        for g in U.gens:
            lhs = tgt.coproduct(phi(U[g.name]))
            rhs = src.coproduct(U[g.name]).map_slots([phi, phi])
            rep.check("correspondence respects coproduct", "%s: %s" % (target, g.name), lhs, rhs)
            rep.check("correspondence respects counit", "%s: %s" % (target, g.name),
                      tgt.counit(phi(U[g.name])), src.counit(U[g.name]))
            rep.check("correspondence respects antipode", "%s: %s" % (target, g.name),
                      tgt.antipode(phi(U[g.name])), phi(src.antipode(U[g.name])))
        P = tgt.alg
        if target == "MNPhi":
            rep.check("tilde images", "X~ -> N", phi(Xt), P["N"])
            rep.check("tilde images", "Y~ -> M", phi(Yt), P["M"])
        else:
            rep.check("tilde images", "X~ -> -(H+K)", phi(Xt), -(P["H"] + P["K"]))
            rep.check("tilde images", "Y~ -> H-K", phi(Yt), P["H"] - P["K"])
    for label, res in vector_field_relations().items():
        rep.check("vector field relations", label, res, res.alg.zero_element())
    return rep


def vector_fields() -> tuple:
    """T1, T2 from q^-2H = 1 + q^-2 (1 - q^-2) T1 and q^-2(H+K) = 1 + (q^-2 - 1)(T1 + T2)."""
    P = presentation("Tfields")
    q = P.symbols["q"]
    one = P.unit()
    T1 = (P["h"] - one).scale(ONE / (q ** -2 * (1 - q ** -2)))
    T12 = (P["h"] * P["k"] - one).scale(ONE / (q ** -2 - 1))
    return T1, T12 - T1, P["Theta"]


def vector_field_relations() -> dict:
    P = presentation("Tfields")
    q = P.symbols["q"]
    T1, T2, Th = vector_fields()
    return {
        "[T1, T2]": T1 * T2 - T2 * T1,
        "[T1, Theta]_(q^-2) + q^2 Theta": T1 * Th - (Th * T1).scale(q ** -2) + Th.scale(q ** 2),
        "[T2, Theta] - q^2 Theta - (1 - q^-2) Theta T1": T2 * Th - Th * T2 - Th.scale(q ** 2)
        - (Th * T1).scale(1 - q ** -2),
        "Theta^2": Th * Th,
    }


def check_dual(bound: int = 3) -> Report:
    rep = Report("dual")
    rep.merge(dual_relation_check(-6, 6))
    rep.merge(dual_relation_check(0, 6))
    rep.merge(dual_coproduct_check())
    return rep
