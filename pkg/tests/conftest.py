from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from daniell import FiniteFunction, StepFunction1D, TensorElement

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def rationals(bound=8):
    return st.builds(Fraction, st.integers(-bound, bound), st.integers(1, bound))


@st.composite
def step_functions(draw, max_plateaus=5, bound=6):
    m = draw(st.integers(0, max_plateaus))
    if m == 0:
        return StepFunction1D()
    points = draw(
        st.lists(st.builds(Fraction, st.integers(-bound, bound), st.integers(1, 3)),
                 min_size=m + 1, max_size=m + 1, unique=True)
    )
    values = draw(st.lists(rationals(bound), min_size=m, max_size=m))
    return StepFunction1D(tuple(sorted(points)), tuple(values))


def finite_functions(size, bound=4):
    return st.lists(rationals(bound), min_size=size, max_size=size).map(FiniteFunction)


@st.composite
def step_tensors(draw, max_terms=3):
    k = draw(st.integers(1, max_terms))
    return TensorElement(tuple((draw(step_functions(3)), draw(step_functions(3))) for _ in range(k)))
