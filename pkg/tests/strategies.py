"""Hypothesis strategies for elements of the shipped presentations."""

from hypothesis import strategies as st

from qsuper.data import presentation
from qsuper.qfield import Q, Scalar

small_ints = st.integers(min_value=-3, max_value=3)


@st.composite
def scalars(draw, max_terms=3):
    """Nonzero-or-zero elements of Q(q): a Laurent polynomial over a small integer polynomial."""
    num = {draw(st.integers(-3, 3)): draw(st.integers(-4, 4)) for _ in range(draw(st.integers(0, max_terms)))}
    out = Scalar.laurent(num)
    if draw(st.booleans()):
        den = Scalar.laurent({draw(st.integers(0, 2)): draw(st.integers(1, 3)), 0: draw(st.integers(1, 3))})
        if den:
            out = out / den
    return out


def _letter_text(alg, g, e):
    name = alg.gens[g].name
    return name if e == 1 else "%s^%d" % (name, e)


@st.composite
def words(draw, alg_name, max_len=4, max_exp=2):
    """A random product of letters as text, respecting invertibility."""
    alg = presentation(alg_name)
    n = draw(st.integers(0, max_len))
    parts = []
    for _ in range(n):
        g = draw(st.integers(0, len(alg.gens) - 1))
        lo = -max_exp if alg.gens[g].invertible else 1
        e = draw(st.integers(lo, max_exp).filter(lambda v: v != 0))
        parts.append(_letter_text(alg, g, e))
    return " ".join(parts) or "1"


@st.composite
def elements(draw, alg_name, max_terms=3, max_len=4, max_exp=2):
    alg = presentation(alg_name)
    out = alg.zero_element()
    for _ in range(draw(st.integers(1, max_terms))):
        c = draw(st.sampled_from([Scalar.const(1), Scalar.const(-2), Q, Q ** -1, Q ** 2 + 1]))
        out = out + alg.parse(draw(words(alg_name, max_len, max_exp))).scale(c)
    return out
