"""Hypothesis strategies for Laurent polynomials and rational functions."""

from hypothesis import strategies as st

from cgwrep.field import BiLaurentPoly, RationalFunction, LValue

exps = st.integers(min_value=-3, max_value=3)
coeffs = st.integers(min_value=-6, max_value=6).filter(bool)


@st.composite
def polys(draw, max_terms=4, nonzero=False):
    keys = draw(st.lists(st.tuples(exps, exps), min_size=1 if nonzero else 0,
                         max_size=max_terms, unique=True))
    return BiLaurentPoly({k: draw(coeffs) for k in keys})


@st.composite
def rfuncs(draw, nonzero=False):
    num = draw(polys(nonzero=nonzero))
    den = draw(polys(max_terms=3, nonzero=True))
    return RationalFunction(num, den)


nonzero_rfuncs = rfuncs(nonzero=True).filter(bool)

lvalues = st.builds(LValue,
                    st.fractions(min_value=-20, max_value=20, max_denominator=20).filter(bool),
                    st.integers(min_value=-15, max_value=15))
