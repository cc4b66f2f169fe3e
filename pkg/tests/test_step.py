from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import rationals, step_functions
from daniell import ElementaryIntegral1D, StepFunction1D, canonicalize, closed_form, combine
from daniell import lemma1_sequence, stationarity_index
from daniell.errors import MalformedInputError

F = Fraction
ind = StepFunction1D.indicator
leb = ElementaryIntegral1D.lebesgue()


def probe_points(*fs):
    """Cell midpoints of the common refinement plus points outside every support."""
    cuts = sorted({b for f in fs for b in f.breakpoints})
    if not cuts:
        return [F(0)]
    mids = [(a + b) / 2 for a, b in zip(cuts, cuts[1:])]
    return [cuts[0] - 1, *cuts, *mids, cuts[-1] + 1]


def test_canonical_examples():
    assert StepFunction1D((0, 1, 2), (1, 1)) == ind(0, 2)
    assert StepFunction1D((0, 1, 2), (0, 0)) == StepFunction1D()
    f = StepFunction1D((0, 1, 2), (1, 2))
    assert f.breakpoints == (0, 1, 2) and f.values == (1, 2)
    assert canonicalize((0, 1, 1, 3, 4), (0, 5, 2, 0)) == ind(1, 3, 2)


def test_decreasing_breakpoints_rejected():
    with pytest.raises(MalformedInputError):
        StepFunction1D((1, 0), (1,))
    with pytest.raises(MalformedInputError):
        StepFunction1D((0, 1), (1, 2))


def test_lattice_examples():
    f, g = ind(0, 1), ind(1, 2)
    assert f + g == ind(0, 2)
    assert combine(f, g, "sup") == ind(0, 2)
    assert combine(f, g, "inf") == StepFunction1D()
    assert abs(ind(0, 1, -1)) == ind(0, 1)
    assert ind(0, 2) * ind(1, 3) == ind(1, 2)


def test_elementary_integral_examples():
    assert leb(ind(0, 1)) == 1
    assert leb(ind(0, 3, 2)) == 6
    f = StepFunction1D((0, F(1, 2), 3), (F(-3, 2), 4))
    assert leb(f - f) == 0
    # density 2 on [0,1) and 1/2 on [1,3)
    mu = ElementaryIntegral1D.stieltjes((0, 1, 3), (2, F(1, 2)))
    assert mu(ind(0, 3)) == 3
    assert mu.interval_weight(F(1, 2), 2) == F(3, 2)
    assert mu(ind(-5, 0)) == 0


def test_lemma1_examples():
    f, g = ind(0, 2), ind(1, 3)
    assert closed_form(f, g) == ind(1, 2)
    assert lemma1_sequence(f, g, 1) == ind(1, 2)
    assert closed_form(f, StepFunction1D()) == StepFunction1D()
    assert all(lemma1_sequence(f, StepFunction1D(), n) == StepFunction1D() for n in range(1, 5))
    f, g = ind(0, 1, 2), ind(0, 1, F(1, 3))
    assert lemma1_sequence(f, g, 3) == ind(0, 1)
    assert stationarity_index(f, g) == 6
    assert lemma1_sequence(f, g, 6) == ind(0, 1, 2)
    assert lemma1_sequence(f, g, 5) != f


def test_lemma1_rejects_negative_f_and_bad_level():
    with pytest.raises(ValueError):
        lemma1_sequence(ind(0, 1, -1), ind(0, 1), 1)
    with pytest.raises(ValueError):
        lemma1_sequence(ind(0, 1), ind(0, 1), 0)


def test_json_round_trip():
    f = StepFunction1D((F(-1, 3), 0, 2), (F(5, 7), -1))
    assert StepFunction1D.from_json(f.to_json()) == f


@given(step_functions(), step_functions())
def test_ops_agree_with_pointwise_oracle(f, g):
    for x in probe_points(f, g):
        assert (f + g)(x) == f(x) + g(x)
        assert (f - g)(x) == f(x) - g(x)
        assert (f * g)(x) == f(x) * g(x)
        assert abs(f)(x) == abs(f(x))
        assert combine(f, g, "sup")(x) == max(f(x), g(x))
        assert combine(f, g, "inf")(x) == min(f(x), g(x))


@given(step_functions())
def test_canonical_form_is_unique(f):
    values = f.values
    assert all(a != b for a, b in zip(values, values[1:]))
    if values:
        assert values[0] != 0 and values[-1] != 0
    # re-expressing on a refined grid gives back the same object
    if f.breakpoints:
        a, b = f.breakpoints[0], f.breakpoints[-1]
        grid = sorted(set(f.breakpoints) | {(a + b) / 3})
        assert StepFunction1D(tuple(grid), tuple(f.values_on(grid))) == f


@given(step_functions(), step_functions(), rationals())
def test_lebesgue_is_linear_against_riemann_oracle(f, g, r):
    def oracle(h):
        return sum(((b - a) * h((a + b) / 2) for a, b in zip(h.breakpoints, h.breakpoints[1:])), F(0))

    assert leb(f) == oracle(f)
    assert leb(f + g.scale(r)) == leb(f) + r * leb(g)


@given(step_functions(), step_functions().map(abs))
def test_lemma1_stationary_at_predicted_index(f, g):
    f = abs(f)
    n = stationarity_index(f, g)
    target = closed_form(f, g)
    assert lemma1_sequence(f, g, n) == target
    assert lemma1_sequence(f, g, n + 3) == target
    for m in range(1, n):
        assert lemma1_sequence(f, g, m).leq(lemma1_sequence(f, g, m + 1))


@given(st.integers(1, 50))
def test_shrinking_chain_integrals(n):
    assert leb(ind(0, F(1, n))) == F(1, n)
