"""The coordinate algebras of the quantum superspace and their star structure."""

from __future__ import annotations

from functools import lru_cache

from .data import matrix_families, presentation
from .engine import Morphism, Presentation, window_by_degree
from .qfield import Q, Scalar
from .report import Report

COORDINATES = ("x", "y", "theta")


def O() -> Presentation:
    return presentation("O")


def F() -> Presentation:
    return presentation("F")


def Lambda() -> Presentation:
    return presentation("Lambda")


@lru_cache(maxsize=None)
def star_map(alg: Presentation) -> Morphism:
    """x* = x, y* = y, theta* = -theta; antilinear and signed anti-multiplicative."""
    images = {"x": alg["x"], "y": alg["y"], "theta": -alg["theta"]}
    return Morphism(alg, images, alg.unit(), anti=True, conjugate=True, name="star")


def star(e):
    return star_map(e.alg)(e)


def check_star_algebra(bound: int = 4, alg: Presentation | None = None) -> Report:
    alg = alg or O()
    rep = Report("star-algebra:%s" % alg.name)
    st = star_map(alg)
    for rule, rhs, residual in st.well_definedness():
        rep.require("ideal preserved", rule, False, rule, rhs, residual)
    rep.checked["ideal preserved"] += len(alg.rules)
    rep.check("unit fixed", "1", star(alg.unit()), alg.unit())
    window = [alg.element({w: alg.one}) for w in window_by_degree(alg, COORDINATES, bound)]
    for a in window:
        rep.check("involution", a, star(star(a)), a)
        rep.check("involution", "q %s" % a, star(star(a * Q)), a * Q)
    half = [a for a in window if sum(abs(e) for _, e in next(iter(a.terms))) <= max(1, bound // 2 + 1)]
    for a in half:
        for b in half:
            sign = -1 if a.degree() and b.degree() else 1
            rep.check("anti-multiplicative", "a = %s, b = %s" % (a, b), star(a * b), star(b) * star(a) * sign)
    return rep


# -- 3x3 matrix families ---------------------------------------------------

def mat_mul(a, b):
    n = len(a)
    zero = a[0][0] - a[0][0]
    return [[sum((a[i][k] * b[k][j] for k in range(n)), zero) for j in range(n)] for i in range(n)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a):
    return [[c * x for x in row] for row in a]


def mat_identity(n=3, one=Scalar.const(1)):
    zero = one - one
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_str(a) -> str:
    return "[" + "; ".join(", ".join(str(x) for x in row) for row in a) + "]"


def coordinate_relation_residuals(mx, my, mt) -> dict:
    """Residual matrices of x y = y x, x theta = q theta x, y theta = q theta y, theta^2 = 0."""
    return {
        "x y - y x": mat_sub(mat_mul(mx, my), mat_mul(my, mx)),
        "x theta - q theta x": mat_sub(mat_mul(mx, mt), mat_scale(Q, mat_mul(mt, mx))),
        "y theta - q theta y": mat_sub(mat_mul(my, mt), mat_scale(Q, mat_mul(mt, my))),
        "theta^2": mat_mul(mt, mt),
    }


def representation_check(family: str, families: dict | None = None) -> Report:
    fams = families or matrix_families()
    if family not in fams:
        raise KeyError("unknown matrix family %r (have: %s)" % (family, ", ".join(fams)))
    m = fams[family]
    rep = Report("matrices:%s" % family)
    for rel, res in coordinate_relation_residuals(m["x"], m["y"], m["theta"]).items():
        rep.require("coordinate relations", rel, all(not v for row in res for v in row),
                    residual=mat_str(res))
    return rep
