"""Hopf superalgebra structures given by generator images, and their axiom checks."""

from __future__ import annotations

from functools import lru_cache

from .data import presentation
from .engine import (Element, Morphism, Presentation, Tensor, _units, embed, graded_union,
                     window_by_degree)
from .report import Report
from .spaces import F, Lambda, O, star


class HopfStructure:
    """Coproduct, counit and antipode extended from their values on generators.

    ``coproduct`` maps names to ``Tensor`` over (A, A); ``counit`` to scalars;
    ``antipode`` to elements of A.  Images of inverse letters default to the
    monomial inverse; supply ``*_inverse`` dicts when that is not enough.
    """

    def __init__(self, alg: Presentation, coproduct: dict, counit: dict, antipode: dict | None = None,
                 coproduct_inverse: dict | None = None, antipode_inverse: dict | None = None):
        self.alg = alg
        self.pair = (alg, alg)
        self.delta = Morphism(alg, coproduct, Tensor.unit(self.pair), inverse_images=coproduct_inverse,
                              name="coproduct")
        inv_counit = {g.name: alg.one / counit[g.name] for g in alg.gens if g.invertible}
        self.eps = Morphism(alg, counit, alg.one, inverse_images=inv_counit, name="counit")
        self.S = None
        if antipode is not None:
            self.S = Morphism(alg, antipode, alg.unit(), anti=True, inverse_images=antipode_inverse,
                              name="antipode")

    def coproduct(self, e: Element) -> Tensor:
        return self.delta(e)

    def counit(self, e: Element):
        return self.eps(e)

    def antipode(self, e: Element) -> Element:
        if self.S is None:
            raise ValueError("no antipode on %s" % self.alg.name)
        return self.S(e)

    # -- slot operations -------------------------------------------------------
    def counit_slot(self, t: Tensor, slot: int) -> Element:
        """Contract one slot of a two-fold tensor with the counit."""
        out = self.alg.zero_element()
        for key, c in t.terms.items():
            v = self.eps.map_word(key[slot])
            if v:
                out = out + Element(self.alg, {key[1 - slot]: c * v})
        return out

    def antipode_multiply(self, t: Tensor, slot: int) -> Element:
        """m (S (x) id) or m (id (x) S) applied to a two-fold tensor."""
        out = self.alg.zero_element()
        for key, c in t.terms.items():
            left = Element(self.alg, {key[0]: self.alg.one})
            right = Element(self.alg, {key[1]: self.alg.one})
            if slot == 0:
                out = out + (self.S(left) * right).scale(c)
            else:
                out = out + (left * self.S(right)).scale(c)
        return out

    def well_definedness(self, rep: Report):
        for label, m in (("coproduct", self.delta), ("counit", self.eps), ("antipode", self.S)):
            if m is None:
                continue
            bad = m.well_definedness()
            rep.checked["%s well-defined" % label] += len(self.alg.rules)
            for rule, rhs, residual in bad:
                rep.require("%s well-defined" % label, rule, False, rule, rhs, residual)

    def check(self, window: list, suite: str = "hopf", rep: Report | None = None) -> Report:
        rep = rep or Report(suite)
        self.well_definedness(rep)
        A = self.alg
        for w in window:
            u = A.element({w: A.one})
            du = self.delta(u)
            rep.check("coassociativity", u, du.map_slots([self.delta, None]), du.map_slots([None, self.delta]))
            rep.check("left counit", u, self.counit_slot(du, 0), u)
            rep.check("right counit", u, self.counit_slot(du, 1), u)
            if self.S is not None:
                unit_part = A.unit().scale(self.eps(u))
                rep.check("left antipode", u, self.antipode_multiply(du, 0), unit_part)
                rep.check("right antipode", u, self.antipode_multiply(du, 1), unit_part)
        return rep


# -- the coordinate Hopf superalgebra ----------------------------------------

@lru_cache(maxsize=None)
def F_hopf() -> HopfStructure:
    A = F()
    x, y, t = A["x"], A["y"], A["theta"]
    xi, yi = A.letter("x", -1), A.letter("y", -1)
    T = Tensor.of
    return HopfStructure(
        A,
        coproduct={"x": T(x, x), "y": T(y, y), "theta": T(t, xi * y) + T(A.unit(), t)},
        counit={"x": A.one, "y": A.one, "theta": A.zero},
        antipode={"x": xi, "y": yi, "theta": -(x * t * yi) * A.symbols["q"] ** -1},
    )


def coproduct(e: Element) -> Tensor:
    return F_hopf().coproduct(e)


def counit(e: Element):
    return F_hopf().counit(e)


def antipode(e: Element) -> Element:
    return F_hopf().antipode(e)


def F_window(lo: int = -2, hi: int = 2) -> list:
    from .engine import basis_window
    return basis_window(F(), {"x": (lo, hi), "y": (lo, hi), "theta": (0, 1)})


def check_hopf(lo: int = -2, hi: int = 2) -> Report:
    rep = F_hopf().check(F_window(lo, hi), suite="hopf")
    A = F()
    S2 = {g: str(antipode(antipode(A[g]))) for g in ("x", "y", "theta")}
    rep.note("antipode squared", "S(S(g)) on generators, recorded without assertion", **S2)
    return rep


def tensor_star(t: Tensor) -> Tensor:
    """(a (x) b)* = a* (x) b*, antilinear in the coefficient."""
    out = Tensor(t.algs, {})
    for key, c in t.terms.items():
        parts = [star(Element(a, {w: a.one})) for a, w in zip(t.algs, key)]
        out = out + Tensor.of(*parts).scale(c.bar())
    return out


def check_star_bialgebra(bound: int = 4) -> Report:
    rep = Report("star-bialgebra")
    A = F()
    h = F_hopf()
    for w in window_by_degree(A, ("x", "y", "theta"), bound):
        for coef in (A.one, A.symbols["q"]):
            a = A.element({w: coef})
            rep.check("coproduct commutes with star", a, h.coproduct(star(a)), tensor_star(h.coproduct(a)))
            rep.check("counit commutes with star", a, h.counit(star(a)), h.counit(a).bar())
    return rep


# -- the quantum supergroup and its coactions ---------------------------------

def GL() -> Presentation:
    return presentation("GL")


@lru_cache(maxsize=None)
def GL_hopf() -> HopfStructure:
    G = GL()
    a, b, c, d, al, be = (G[n] for n in ("a", "b", "c", "d", "alpha", "beta"))
    ci, bi = G.letter("c", -1), G.letter("b", -1)
    T, one = Tensor.of, G.unit()
    return HopfStructure(
        G,
        coproduct={
            "a": T(a, a), "b": T(b, b), "c": T(c, c),
            "d": T(bi * a, d) + T(d, one),
            "alpha": T(a * ci, al) + T(b * d * ci, be) + T(al, one),
            "beta": T(b * ci, be) + T(be, one),
        },
        counit={"a": G.one, "b": G.one, "c": G.one, "d": G.zero, "alpha": G.zero, "beta": G.zero},
    )


def supermatrix(G: Presentation):
    a, b, c, d, al, be = (G[n] for n in ("a", "b", "c", "d", "alpha", "beta"))
    z = G.zero_element()
    return [[a, b * d, al * c], [z, b, be * c], [z, z, c]]


def check_supergroup(bound: int = 2) -> Report:
    """Matrix coproduct well-defined on every relation, plus bialgebra axioms on a window."""
    rep = Report("supergroup")
    h = GL_hopf()
    G = GL()
    T = supermatrix(G)
    for i in range(3):
        for j in range(3):
            rhs = Tensor(h.pair, {})
            for k in range(3):
                rhs = rhs + Tensor.of(T[i][k], T[k][j])
            rep.check("matrix coproduct", "t%d%d" % (i + 1, j + 1), h.coproduct(T[i][j]), rhs)
    window = window_by_degree(G, ("a", "b", "c", "d", "alpha", "beta"), bound, negative=False)
    h.check(window, rep=rep)
    return rep


@lru_cache(maxsize=None)
def comodule_algebra(target: str) -> Presentation:
    space = {"O": O, "Lambda": Lambda}[target]()
    return graded_union(GL(), space, name="GL|" + target)


def coaction_check(target: str = "O") -> Report:
    rep = Report("coaction:%s" % target)
    space = {"O": O, "Lambda": Lambda}[target]()
    C = comodule_algebra(target)
    off = len(GL().gens)
    Tm = [[embed(e, C) for e in row] for row in supermatrix(GL())]
    names = ("x", "y", "theta") if target == "O" else ("phi1", "phi2", "z")
    coords = [embed(space[n], C, off) for n in names]
    primed = [sum((Tm[i][j] * coords[j] for j in range(3)), C.zero_element()) for i in range(3)]
    q = C.symbols["q"]
    if target == "O":
        x, y, t = primed
        rels = {"x' y' - y' x'": x * y - y * x,
                "x' theta' - q theta' x'": x * t - t * x * q,
                "y' theta' - q theta' y'": y * t - t * y * q,
                "theta'^2": t * t}
    else:
        p1, p2, z = primed
        rels = {"phi1'^2": p1 * p1, "phi2'^2": p2 * p2,
                "phi1' phi2' + q^-2 phi2' phi1'": p1 * p2 + p2 * p1 * q ** -2,
                "phi1' z' - q^-1 z' phi1'": p1 * z - z * p1 * q ** -1,
                "phi2' z' - q^-1 z' phi2'": p2 * z - z * p2 * q ** -1}
    for label, res in rels.items():
        rep.check("primed relations", label, res, C.zero_element(), residual=res)
    # t_ij -> delta_ij recovers the untransformed coordinates
    spec = {n: (C.unit() if n in ("a", "b", "c") else C.zero_element()) for n in ("a", "b", "c", "d", "alpha", "beta")}
    for g in space.gens:
        spec[g.name] = embed(space[g.name], C, off)
    ev = Morphism(C, spec, C.unit(), name="specialize")
    for n, p, c in zip(names, primed, coords):
        rep.check("identity specialization", n + "'", ev(p), c)
    return rep
