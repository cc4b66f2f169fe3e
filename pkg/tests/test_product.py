import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import finite_functions, step_functions, step_tensors
from daniell import ElementaryIntegral1D, FiniteFunction, GridFunction, ProductIntegral, StepFunction1D
from daniell import TensorElement, WeightedIntegral, cellwise_integral, flatten, iterated_integral
from daniell import lemma6_approximation, lemma6_dominator, partial_integral, product_integral
from daniell import section, theorem1_residual
from daniell.errors import DomainMismatchError
from daniell.sampling import random_stieltjes

F = Fraction
ind = StepFunction1D.indicator
leb = ElementaryIntegral1D.lebesgue()
mu = ElementaryIntegral1D.stieltjes((0, 1, 3), (2, F(1, 2)))
column = GridFunction((0, 1, 2), (0, 1), ((1,), (2,)))


def test_sections():
    square = flatten(TensorElement.simple(ind(0, 1), ind(0, 1)))
    assert section(square, "x", F(1, 2)) == ind(0, 1)
    assert section(square, "x", 5) == StepFunction1D()
    assert section(column, "x", F(3, 2)) == ind(0, 1, 2)
    assert section(column, "y", F(1, 2)) == StepFunction1D((0, 1, 2), (1, 2))


def test_partial_integrals():
    strip = flatten(TensorElement.simple(ind(0, 1), ind(0, 2)))
    assert partial_integral(leb, strip, "y") == ind(0, 1, 2)
    assert partial_integral(leb, GridFunction(), "y") == StepFunction1D()
    assert partial_integral(leb, column, "y") == StepFunction1D((0, 1, 2), (1, 2))


def test_product_integral_examples():
    assert product_integral(leb, leb, flatten(TensorElement.simple(ind(0, 1), ind(0, 2)))) == 2
    assert product_integral(leb, leb, GridFunction()) == 0
    assert product_integral(leb, leb, column) == 3
    assert iterated_integral(leb, leb, column, "yx") == 3


def test_finite_theorem1():
    J, K = WeightedIntegral((1, 1)), WeightedIntegral((2, 3))
    f, g = FiniteFunction([1, 2]), FiniteFunction([1, 1])
    assert product_integral(J, K, TensorElement.simple(f, g)) == 15
    assert theorem1_residual(J, K, f, g) == 0
    assert theorem1_residual(J, K, FiniteFunction([0, 0]), g) == 0


def test_mixed_kinds_rejected():
    with pytest.raises(DomainMismatchError):
        theorem1_residual(leb, leb, ind(0, 1), FiniteFunction([1]))
    with pytest.raises(DomainMismatchError):
        partial_integral(WeightedIntegral((1,)), column, "y")


def test_product_integral_descriptor():
    assert "(x)" in ProductIntegral(leb, mu).descriptor


@given(step_functions(), step_functions(), st.integers(0, 10**6))
def test_theorem1_against_independent_sum(f, g, seed):
    K = random_stieltjes(random.Random(seed))
    assert theorem1_residual(leb, K, f, g) == 0
    # oracle: integrate the raw product cell by cell with no refinement logic
    total = F(0)
    for a, b, u in zip(f.breakpoints, f.breakpoints[1:], f.values):
        for c, d, v in zip(g.breakpoints, g.breakpoints[1:], g.values):
            total += u * v * (b - a) * K(ind(c, d))
    assert product_integral(leb, K, flatten(TensorElement.simple(f, g))) == total


@given(finite_functions(3), finite_functions(2))
def test_finite_double_sum(f, g):
    J, K = WeightedIntegral((1, 2, F(1, 3))), WeightedIntegral((F(5, 2), 0))
    double = sum((J.weights[i] * K.weights[j] * f.values[i] * g.values[j]
                  for i in range(3) for j in range(2)), F(0))
    assert product_integral(J, K, TensorElement.simple(f, g)) == double


@given(step_tensors())
def test_orders_agree_and_positive(t):
    f = flatten(t)
    a = iterated_integral(leb, mu, f, "xy")
    assert a == iterated_integral(leb, mu, f, "yx") == cellwise_integral(leb, mu, f)
    assert product_integral(leb, mu, abs(f)) >= 0


@given(step_tensors(), st.sampled_from([1, 2, 4, 16]))
def test_dominated_convergence_bound(t, n):
    I = ProductIntegral(leb, mu)
    g, h = lemma6_dominator(t)
    approx = lemma6_approximation(t, n)
    abs_fn = flatten(approx.abs_f_n) if approx.abs_f_n.terms else GridFunction()
    gap = abs(I(abs(flatten(t))) - I(abs_fn))
    assert gap <= F(2 * t.k, n) * I(flatten(TensorElement.simple(g, h)))
