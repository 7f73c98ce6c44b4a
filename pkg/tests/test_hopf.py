import pytest
from hypothesis import given

from qsuper.engine import Tensor
from qsuper.hopf import (F_hopf, GL, GL_hopf, antipode, check_hopf, check_star_bialgebra, check_supergroup,
                         coaction_check, coproduct, counit, tensor_star)
from qsuper.qfield import Q
from qsuper.spaces import F, star
from strategies import elements


@pytest.fixture
def A():
    return F()


def test_generator_coproducts(A):
    x, y, t = A["x"], A["y"], A["theta"]
    assert coproduct(x) == Tensor.of(x, x)
    assert coproduct(t) == Tensor.of(t, A.parse("x^-1 y")) + Tensor.of(A.unit(), t)
    assert str(coproduct(t)) == "1 ⊗ theta + theta ⊗ x^-1 y"


def test_generator_counit_and_antipode(A):
    assert counit(A["x"]) == 1 and counit(A["theta"]) == 0
    assert antipode(A["x"]) == A.parse("x^-1")
    assert antipode(A["theta"]) == A.parse("x theta y^-1").scale(-Q ** -1)
    assert str(antipode(A["theta"])) == "-x y^-1 theta"


def test_antipode_on_theta_cancels(A):
    h = F_hopf()
    t = A["theta"]
    assert not h.antipode_multiply(h.coproduct(t), 0)
    assert not h.antipode_multiply(h.coproduct(t), 1)


def test_inverse_letters_are_group_like(A):
    xi = A.parse("x^-1")
    assert coproduct(xi) == Tensor.of(xi, xi)
    assert counit(xi) == 1


@given(elements("F", max_len=3), elements("F", max_len=3))
def test_coproduct_is_algebra_map(a, b):
    assert coproduct(a * b) == coproduct(a) * coproduct(b)
    assert counit(a * b) == counit(a) * counit(b)


@given(elements("F", max_len=3), elements("F", max_len=3))
def test_antipode_is_graded_anti_map(a, b):
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            ea, eb = a.alg.element({wa: ca}), a.alg.element({wb: cb})
            sign = -1 if a.alg.word_degree(wa) % 2 and a.alg.word_degree(wb) % 2 else 1
            assert antipode(ea * eb) == (antipode(eb) * antipode(ea)).scale(Q / Q * sign)


@given(elements("F", max_len=3))
def test_hopf_axioms_on_random_elements(a):
    h = F_hopf()
    da = h.coproduct(a)
    assert da.map_slots([h.delta, None]) == da.map_slots([None, h.delta])
    assert h.counit_slot(da, 0) == a == h.counit_slot(da, 1)
    unit = a.alg.unit().scale(h.counit(a))
    assert h.antipode_multiply(da, 0) == unit == h.antipode_multiply(da, 1)


@given(elements("F", max_len=3))
def test_star_commutes_with_coproduct(a):
    assert coproduct(star(a)) == tensor_star(coproduct(a))
    assert counit(star(a)) == counit(a).bar()


def test_hopf_suite_small_window():
    rep = check_hopf(-1, 1)
    assert rep.passed
    assert rep.checked["coassociativity"] == 18


def test_star_bialgebra_suite():
    assert check_star_bialgebra(2).passed


def test_supergroup_matrix_coproduct():
    G = GL()
    h = GL_hopf()
    b, d, a = G["b"], G["d"], G["a"]
    # t12 = b d
    expected = Tensor.of(a, b * d) + Tensor.of(b * d, b)
    assert h.coproduct(b * d) == expected
    assert check_supergroup(1).passed


@pytest.mark.parametrize("space", ("O", "Lambda"))
def test_coaction_preserves_relations(space):
    rep = coaction_check(space)
    assert rep.passed
    assert rep.checked["primed relations"] == (4 if space == "O" else 5)
