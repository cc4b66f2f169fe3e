import random
from fractions import Fraction

import pytest

from daniell import ElementaryIntegral1D, FiniteFunction, StepFunction1D, WeightedIntegral
from daniell import check_integral_axioms
from daniell.errors import InsufficientSamplesError
from daniell.riesz import closure_corpus, negative_part, positive_part
from daniell.sampling import finite_sampler, step_sampler

F = Fraction


def finite_chain(n):
    return FiniteFunction([F(1, n), F(1, n)])


def step_chain(n):
    return StepFunction1D.indicator(0, F(1, n))


def test_nonnegative_weights_pass():
    report = check_integral_axioms(finite_sampler(random.Random(1), 2), WeightedIntegral((1, 2)), [finite_chain])
    assert report.passed, report.summary()


def test_zero_functional_passes():
    report = check_integral_axioms(finite_sampler(random.Random(2), 2), lambda f: F(0), [finite_chain])
    assert report.passed


def test_signed_weights_fail_monotonicity():
    signed = WeightedIntegral((1, -1), signed=True)
    report = check_integral_axioms(iter([FiniteFunction([0, 1]), FiniteFunction([0, -1])]), signed, trials=1)
    assert report.failed() == ["iii", "iii_two_sided"]
    assert report["iii"].counterexample == FiniteFunction([0, -1])
    assert report["i"].passed and report["ii"].passed


def test_lebesgue_and_stieltjes_pass_with_chains():
    for integral in (ElementaryIntegral1D.lebesgue(), ElementaryIntegral1D.stieltjes((0, 1, 3), (2, F(1, 2)))):
        report = check_integral_axioms(step_sampler(random.Random(3)), integral, [step_chain], trials=30)
        assert report.passed, report.summary()
        assert report["iv"].checked > 1


def test_chain_that_stalls_is_reported():
    report = check_integral_axioms(iter(()), ElementaryIntegral1D.lebesgue(),
                                   [lambda n: StepFunction1D.indicator(0, 1)], trials=0)
    assert not report["iv"].passed


def test_increasing_chain_is_reported():
    report = check_integral_axioms(iter(()), ElementaryIntegral1D.lebesgue(),
                                   [lambda n: StepFunction1D.indicator(0, n)], trials=0)
    assert "exceeds" in report["iv"].detail


def test_sampler_exhaustion_carries_partial_report():
    with pytest.raises(InsufficientSamplesError) as info:
        check_integral_axioms(iter([FiniteFunction([1])] * 3), WeightedIntegral((1,)), trials=5)
    assert info.value.report["i"].checked == 1


def test_parts_split_a_function():
    f = FiniteFunction([2, -3, 0])
    assert positive_part(f) == FiniteFunction([2, 0, 0])
    assert negative_part(f) == FiniteFunction([0, 3, 0])


def test_closure_corpus_respects_budget_and_dedupes():
    corpus = closure_corpus([FiniteFunction([1, -1])], 3, 25)
    assert len(corpus) <= 25
    assert len(set(corpus)) == len(corpus)
    assert FiniteFunction([1, 1]) in corpus
