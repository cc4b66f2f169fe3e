"""Seeded random generators for elements, integrals and tensors."""
from __future__ import annotations

import random
from fractions import Fraction

from .finite import FiniteFunction, WeightedIntegral
from .step import ElementaryIntegral1D, StepFunction1D
from .tensor import TensorElement


def random_rational(rng: random.Random, bound: int = 8, nonzero: bool = False) -> Fraction:
    """``p/q`` with ``|p| <= bound`` and ``1 <= q <= bound``."""
    while True:
        value = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if value or not nonzero:
            return value


def random_step(rng: random.Random, max_plateaus: int = 6, bound: int = 8) -> StepFunction1D:
    m = rng.randint(1, max_plateaus)
    points: set[Fraction] = set()
    while len(points) < m + 1:
        points.add(Fraction(rng.randint(-bound, bound), rng.randint(1, 4)))
    breaks = sorted(points)
    return StepFunction1D(tuple(breaks), tuple(random_rational(rng, bound) for _ in range(m)))


def random_finite(rng: random.Random, size: int, bound: int = 8) -> FiniteFunction:
    return FiniteFunction(random_rational(rng, bound) for _ in range(size))


def random_tensor(rng: random.Random, k: int, max_plateaus: int = 6, bound: int = 8) -> TensorElement:
    return TensorElement(
        tuple((random_step(rng, max_plateaus, bound), random_step(rng, max_plateaus, bound)) for _ in range(k))
    )


def random_stieltjes(rng: random.Random, max_plateaus: int = 4) -> ElementaryIntegral1D:
    base = random_step(rng, max_plateaus)
    return ElementaryIntegral1D(abs(base), label="stieltjes")


def random_weights(rng: random.Random, size: int, bound: int = 8) -> WeightedIntegral:
    return WeightedIntegral(tuple(abs(random_rational(rng, bound)) for _ in range(size)))


def step_sampler(rng: random.Random, max_plateaus: int = 6, bound: int = 8):
    while True:
        yield random_step(rng, max_plateaus, bound)


def finite_sampler(rng: random.Random, size: int, bound: int = 8):
    while True:
        yield random_finite(rng, size, bound)
