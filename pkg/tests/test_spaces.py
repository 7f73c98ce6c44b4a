import pytest
import sympy
from hypothesis import given
from sympy.parsing.sympy_parser import (implicit_multiplication_application, parse_expr,
                                        standard_transformations)

from qsuper.data import matrix_families, raw_matrix_families
from qsuper.qfield import Q
from qsuper.spaces import F, O, check_star_algebra, representation_check, star
from strategies import elements, scalars

qs = sympy.Symbol("q")
IMPLICIT = standard_transformations + (implicit_multiplication_application,)
FAMILIES = ("ex31a", "ex31b", "remark43_f", "remark45_g", "remark47_G")


def sympy_family(name):
    """The raw matrix file entries evaluated by sympy at r = s = q^2."""
    env = {"q": qs, "r": qs ** 2, "s": qs ** 2}
    rows = raw_matrix_families()[name]
    read = lambda e: parse_expr(e.replace("^", "**"), local_dict=env, transformations=IMPLICIT)
    return {g: sympy.Matrix([[read(e) for e in row] for row in m])
            for g, m in rows.items()}


def sympy_relations_hold(m):
    x, y, t = m["x"], m["y"], m["theta"]
    rels = [x * y - y * x, x * t - qs * t * x, y * t - qs * t * y, t * t]
    return [all(sympy.simplify(v) == 0 for v in r) for r in rels]


def test_printed_example_matrices():
    fam = matrix_families()["ex31a"]
    assert fam["x"][0][0] == Q and fam["x"][2][2] == Q / Q
    assert fam["y"][0][1] == Q ** 2 - 1 and fam["y"][2][2] == Q ** -1
    assert fam["theta"][0][2] == Q ** 2 - 1
    fam = matrix_families()["ex31b"]
    assert fam["y"][1][0] == Q ** -2 - 1 and fam["theta"][2][0] == 1 - Q ** -2


@pytest.mark.parametrize("family", FAMILIES)
def test_representation_against_sympy(family):
    engine = representation_check(family)
    oracle = sympy_relations_hold(sympy_family(family))
    assert engine.passed == all(oracle)


@pytest.mark.parametrize("family", ("ex31a", "ex31b", "remark43_f", "remark45_g"))
def test_families_represent_superspace(family):
    assert representation_check(family).passed


def test_remark47_matrices_fail_y_theta():
    rep = representation_check("remark47_G")
    assert [r.instance for r in rep.failures] == ["y theta - q theta y"]
    assert sympy_relations_hold(sympy_family("remark47_G")) == [True, True, False, True]


def test_unknown_family():
    with pytest.raises(KeyError):
        representation_check("nope")


def test_star_on_generators():
    A = O()
    assert star(A["x"]) == A["x"] and star(A["y"]) == A["y"]
    assert star(A["theta"]) == -A["theta"]
    assert str(star(A.parse("x theta"))) == "-q^-1 x theta"
    assert star(A.parse("q x")) == A.parse("q^-1 x")


@given(elements("F"), elements("F"))
def test_star_anti_multiplicative(a, b):
    sign = 1
    for wa in a.terms:
        for wb in b.terms:
            pa, pb = a.alg.word_degree(wa) % 2, b.alg.word_degree(wb) % 2
            ea, eb = a.alg.element({wa: a.terms[wa]}), b.alg.element({wb: b.terms[wb]})
            sign = -1 if pa and pb else 1
            assert star(ea * eb) == (star(eb) * star(ea)).scale(Q / Q * sign)


@given(elements("F"), scalars())
def test_star_involutive_antilinear(a, c):
    assert star(star(a)) == a
    assert star(a.scale(c)) == star(a).scale(c.bar())


@pytest.mark.parametrize("alg", (O, F))
def test_star_algebra_suite(alg):
    rep = check_star_algebra(3, alg())
    assert rep.passed and rep.total() > 0
