"""Run the integral axiom checks on valid integrals and on a signed fixture."""
import random
from fractions import Fraction as F

from daniell import ElementaryIntegral1D, FiniteFunction, StepFunction1D, WeightedIntegral
from daniell import check_integral_axioms
from daniell.sampling import finite_sampler, step_sampler

rng = random.Random(0)
shrinking = [lambda n: StepFunction1D.indicator(0, F(1, n))]
for integral in (ElementaryIntegral1D.lebesgue(), ElementaryIntegral1D.stieltjes((0, 2), (3,))):
    print(check_integral_axioms(step_sampler(rng), integral, shrinking).summary(), "\n")

signed = WeightedIntegral((1, -1), signed=True, label="weights(1, -1)")
report = check_integral_axioms(finite_sampler(rng, 2), signed, [lambda n: FiniteFunction([F(1, n), 0])])
print(report.summary())
