"""Acceptance suite: one recorded pass/fail line per criterion, printed in the terminal summary."""
import time

import pytest
import sympy

from qsuper import calculus, duality, hopf, spaces, weyl
from qsuper.cli import CONFLUENT, run
from qsuper.data import presentation
from qsuper.engine import Tensor, check_confluence
from qsuper.qfield import Q, Scalar


def summary(*reports):
    checks = sum(r.total() for r in reports)
    failed = sum(len(r.failures) for r in reports)
    return "%d checks, %d failed" % (checks, failed)


def test_criterion_1_confluence(acceptance):
    start = time.perf_counter()
    bad = {name: check_confluence(presentation(name), 4) for name in CONFLUENT}
    bad["GL|O"] = check_confluence(hopf.comodule_algebra("O"), 4)
    bad["GL|Lambda"] = check_confluence(hopf.comodule_algebra("Lambda"), 4)
    elapsed = time.perf_counter() - start
    ok = not any(bad.values()) and elapsed < 30
    acceptance(1, ok, "normal forms confluent at bound 4", "%d presentations, %.1f s" % (len(bad), elapsed))
    assert not any(bad.values()), {k: v[:3] for k, v in bad.items() if v}
    assert elapsed < 30


def test_criterion_2_hopf_axioms(acceptance):
    rep = hopf.check_hopf(-2, 2)
    h = hopf.F_hopf()
    theta = spaces.F()["theta"]
    theta_ok = not h.antipode_multiply(h.coproduct(theta), 0)
    acceptance(2, rep.passed and theta_ok, "Hopf axioms on F, exponents -2..2", summary(rep))
    assert rep.passed and theta_ok


def test_criterion_3_star_structure(acceptance):
    reps = [spaces.check_star_algebra(4, spaces.O()), spaces.check_star_algebra(4, spaces.F()),
            hopf.check_star_bialgebra(4)]
    bar_ok = Q.bar() == Q ** -1
    ok = all(r.passed for r in reps) and bar_ok
    acceptance(3, ok, "star algebra and star bialgebra at degree 4", summary(*reps))
    assert ok


def test_criterion_4_calculus_discrimination(acceptance):
    q, r, s = sympy.symbols("q r s")
    _, _, accepted = calculus.calculus_consistency("44")
    _, eqs, rejected = calculus.calculus_consistency("45")
    ideal = list(sympy.groebner(eqs, r, s, domain=sympy.QQ.frac_field(q)).exprs)
    reps = [calculus.check_consistency("44"), calculus.check_consistency("45")]
    ok = accepted == [{r: q ** 2, s: q ** 2}] and rejected == [] and ideal == [1] and all(x.passed for x in reps)
    acceptance(4, ok, "accepted calculus forces r = s = q^2, rejected one has no solution", summary(*reps))
    assert ok


def test_criterion_5_differential(acceptance):
    rep = calculus.check_differential(6, 200, 0)
    acceptance(5, rep.passed, "d^2 = 0 and graded Leibniz", summary(rep))
    assert rep.passed


def test_criterion_6_tau_sigma(acceptance):
    rep = calculus.check_tau_sigma(3)
    acceptance(6, rep.passed, "tau and sigma coherence", summary(rep))
    assert rep.passed


def test_criterion_7_partials(acceptance):
    reps = [calculus.check_partials(3), calculus.check_partial_relations(3)]
    A = spaces.F()
    delta = all(calculus.partial(v, A[u]) == (A.unit() if u == v else A.zero_element())
                for u in calculus.FUNCTIONS for v in calculus.FUNCTIONS)
    ok = all(r.passed for r in reps) and delta
    acceptance(7, ok, "partial derivatives", summary(*reps))
    assert ok


def printed_w1_w3_holds():
    w1, w2, w3 = calculus.mc_forms()
    return w1 * w3 == (w3 * w1).scale(Q ** -2) + (w3 * w2).scale(1 - Q ** -2)


def test_criterion_8_maurer_cartan(acceptance):
    rep = calculus.check_mc()
    invariant = all(calculus.right_coaction(w) == Tensor.of(w, calculus.Omega().unit()) for w in calculus.mc_forms())
    topics = {n["topic"] for n in rep.notes}
    printed = printed_w1_w3_holds()
    acceptance(8, rep.passed and invariant and printed, "Maurer-Cartan suite",
               summary(rep) + ("" if printed else "; printed w1 w3 relation does not hold"))
    # everything except the printed w1 w3 relation is asserted here
    assert rep.passed and invariant
    assert {"mu versus printed", "printed form relation"} <= topics


@pytest.mark.xfail(strict=True, reason="printed w1 w3 relation has w1 and w3 exchanged")
def test_criterion_8_printed_w1_w3_relation():
    assert printed_w1_w3_holds()


def test_criterion_9_weyl(acceptance):
    reps = [weyl.euler_identity_check(5, 6), weyl.normal_element_check()]
    topics = {n["topic"] for n in reps[0].notes}
    ok = all(r.passed for r in reps) and "Euler element on x y theta" in topics
    acceptance(9, ok, "Euler identities and normal element", summary(*reps))
    assert ok


def test_criterion_10_coaction(acceptance):
    reps = [hopf.coaction_check("O"), hopf.coaction_check("Lambda"), hopf.check_supergroup()]
    ok = all(r.passed for r in reps)
    acceptance(10, ok, "supergroup coaction", summary(*reps))
    assert ok


def test_criterion_11_duality(acceptance):
    reps = [duality.check_dual()] + [duality.hopf_lie_check(w) for w in duality.HOPF_LIE]
    reps.append(duality.equivalence_check())
    ok = all(r.passed for r in reps) and len(duality.HOPF_LIE) == 4
    acceptance(11, ok, "duality and Hopf-Lie presentations", summary(*reps))
    assert ok


def timed_check_all(bound):
    start = time.perf_counter()
    code, out = run(["check", "all", "--bound", str(bound)])
    return code, out, time.perf_counter() - start


def test_criterion_12_end_to_end(acceptance):
    code3, out3, t3 = timed_check_all(3)
    code4, out4, t4 = timed_check_all(4)
    ok = code3 == 0 and t3 < 60 and code4 == 0 and t4 < 600
    acceptance(12, ok, "check all", "bound 3: exit %d in %.1f s; bound 4: exit %d in %.1f s" % (code3, t3, code4, t4))
    assert code3 == 0 and t3 < 60, out3.splitlines()[-1]
    assert code4 == 0 and t4 < 600, out4.splitlines()[-1]


def test_scalar_bar_is_inverse_on_quotients():
    f = (Q + 1) / (Q - 2)
    assert f.bar() == (Q ** -1 + 1) / (Q ** -1 - 2)
    assert Scalar.parse(str(f)) == f
