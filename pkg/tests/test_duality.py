import pytest
from hypothesis import given
from hypothesis import strategies as st

from qsuper.data import presentation
from qsuper.duality import (DUAL_RELATIONS, HOPF_LIE, NAB, NABLA, ONE_U, DualElement, G, X, Y, correspondence,
                            dual_antipode, dual_coproduct, dual_counit, equivalence_check, group_like, hopf_lie,
                            hopf_lie_check, nabla_hat, pair, pair_tensor, parse_dual, vector_field_relations)
from qsuper.engine import Element, Tensor
from qsuper.hopf import F_hopf
from qsuper.qfield import ONE, ZERO, Q, Scalar
from qsuper.spaces import F

exps = st.integers(-6, 6)
letters = st.one_of(st.sampled_from(["X", "Y", NABLA]),
                    st.tuples(st.just("G"), st.integers(-2, 2), st.integers(-2, 2)))
dual_words = st.lists(letters, max_size=4).map(tuple)


def monomial(m, n, k):
    A = F()
    return A.parse("x^%d y^%d theta^%d" % (m, n, k))


def closed_form(word, m, n, k):
    """Iterated coproduct: letters left of Nab see x^m y^n, letters right of it see x^(m-1) y^(n+1)."""
    nabs = [i for i, l in enumerate(word) if l == NABLA]
    if len(nabs) != k:
        return ZERO
    total = ONE
    for i, l in enumerate(word):
        if l == NABLA:
            continue
        a, b = (m, n) if not nabs or i < nabs[0] else (m - 1, n + 1)
        if l == "X":
            total = total * a
        elif l == "Y":
            total = total * b
        else:
            total = total * Scalar.qpow(l[1] * a + l[2] * b)
    return total


@pytest.mark.parametrize("m, n", [(0, 0), (3, 0), (2, 5), (-1, 4)])
def test_generator_pairings(m, n):
    assert pair(X, monomial(m, n, 0)) == m and pair(X, monomial(m, n, 1)) == 0
    assert pair(Y, monomial(m, n, 0)) == n and pair(Y, monomial(m, n, 1)) == 0
    assert pair(NAB, monomial(m, n, 1)) == 1 and pair(NAB, monomial(m, n, 0)) == 0
    assert pair(ONE_U, monomial(m, n, 0)) == 1 and pair(ONE_U, monomial(m, n, 1)) == 0


def test_pair_x_cubed():
    assert pair("X", F().parse("x^3")) == 3


@pytest.mark.parametrize("m", range(-3, 5))
def test_products_with_nabla(m):
    f = monomial(m, 2, 1)
    assert pair(X * NAB, f) == m
    assert pair(NAB * X, f) == m - 1


@given(dual_words, exps, exps, st.integers(0, 1))
def test_pairing_matches_iterated_coproduct(word, m, n, k):
    assert pair(DualElement({word: ONE}), monomial(m, n, k)) == closed_form(word, m, n, k)


@pytest.mark.parametrize("label", sorted(DUAL_RELATIONS))
@given(m=exps, n=exps, k=st.integers(0, 1))
def test_relation_functionals_vanish(label, m, n, k):
    assert pair(parse_dual(DUAL_RELATIONS[label]), monomial(m, n, k)) == 0


@given(dual_words, dual_words, st.tuples(exps, exps, st.integers(0, 1)))
def test_product_pairs_with_coproduct(u, v, f):
    """<uv, f> = <u (x) v, Delta f> with the graded tensor pairing."""
    fe = monomial(*f)
    lhs = pair(DualElement({u + v: ONE}), fe)
    rhs = ZERO
    for (a, b), c in F_hopf().coproduct(fe).terms.items():
        rhs = rhs + c * pair_tensor({(u, v): ONE}, a, b)
    assert lhs == rhs


@given(dual_words, st.tuples(exps, exps, st.integers(0, 1)), st.tuples(exps, exps, st.integers(0, 1)))
def test_coproduct_pairs_with_product(u, f, g):
    fe, ge = monomial(*f), monomial(*g)
    t = dual_coproduct(DualElement({u: ONE}))
    rhs = ZERO
    for fa, ca in fe.terms.items():
        for gb, cb in ge.terms.items():
            rhs = rhs + ca * cb * pair_tensor(t, fa, gb)
    assert pair(DualElement({u: ONE}), fe * ge) == rhs


@given(dual_words, st.tuples(exps, exps, st.integers(0, 1)))
def test_antipode_is_dual(u, f):
    fe = monomial(*f)
    ue = DualElement({u: ONE})
    assert pair(dual_antipode(ue), fe) == pair(ue, F_hopf().antipode(fe))


@given(dual_words)
def test_counit_is_pairing_with_unit(u):
    ue = DualElement({u: ONE})
    assert pair(ue, F().unit()) == dual_counit(ue)


def test_forced_nabla_coproduct():
    t = dual_coproduct(NAB)
    assert t == {((NABLA,), (G(-1, -1),)): ONE, ((), (NABLA,)): ONE}


def test_rescaled_nabla_has_printed_coproduct():
    nh = nabla_hat()
    A = F()
    words = [w for w in F_hopf().coproduct(A.parse("x^2 y^-1 theta")).terms]
    assert nh == NAB * group_like(1, 1)
    for (a, b) in words:
        fa, fb = Element(A, {a: A.one}), Element(A, {b: A.one})
        printed = pair_tensor({((NABLA, G(1, 1)), ()): ONE, ((G(1, 1),), (NABLA, G(1, 1))): ONE}, a, b)
        assert pair(nh, fa * fb) == printed


def test_parse_dual_forms():
    assert parse_dual("G(1,-1) Nab") == parse_dual("G[1,-1] Nab") == group_like(1, -1) * NAB
    assert parse_dual("∇ X") == NAB * X
    assert parse_dual("q X - 1/2 Y") == X.scale(Q) - Y.scale(ONE / 2)
    with pytest.raises(ValueError):
        parse_dual("Z")


@pytest.mark.parametrize("which", HOPF_LIE)
def test_hopf_lie_presentations(which):
    assert hopf_lie_check(which, degree=2).passed


@pytest.mark.parametrize("which, odd, group, printed", [
    ("MNPhi", "Phi", "L", "Phi (x) q^-N + 1 (x) Phi"),
    ("HKTheta", "Theta", "L", "Theta (x) 1 + q^-(H+K) (x) Theta"),
    ("Uq", "Nab", "G", "Nab (x) 1 + q^(X+Y) (x) Nab"),
])
def test_hopf_lie_odd_coproducts(which, odd, group, printed):
    h = hopf_lie(which)
    P = h.alg
    T, u, g = Tensor.of, P[odd], P[group]
    expected = T(u, g) + T(P.unit(), u) if which == "MNPhi" else T(u, P.unit()) + T(g, u)
    assert h.coproduct(u) == expected, printed
    assert h.antipode(u) == -(P.letter(group, -1) * u)


def test_correspondence_images():
    phi = correspondence("HKTheta")
    U = presentation("Uq")
    P = presentation("HKTheta")
    assert phi(U["X"] + U["Y"]) == -(P["H"] + P["K"])
    assert phi(U["Nab"]) == P["Theta"]
    assert not correspondence("MNPhi").well_definedness()


def test_vector_field_relations():
    assert all(not v for v in vector_field_relations().values())


def test_equivalence_suite():
    rep = equivalence_check()
    assert rep.passed and rep.total() == 56
