import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ctcong.laurent import LaurentPoly

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

NAMES = ("x", "y", "z")


@st.composite
def laurent_polys(draw, names=NAMES, max_terms=5, max_coeff=9, max_exp=3):
    nv = draw(st.integers(1, len(names)))
    vars = names[:nv]
    exps = st.tuples(*[st.integers(-max_exp, max_exp) for _ in vars])
    terms = draw(
        st.dictionaries(exps, st.integers(-max_coeff, max_coeff), max_size=max_terms)
    )
    return LaurentPoly(terms, vars)


small_primes = st.sampled_from([2, 3, 5, 7, 11, 13])
