"""Riesz-space element/integral contracts and the Daniell axiom harness.

Every concrete element type in the package (finite vectors, 1-D step
functions, 2-D grid functions) follows the same small protocol: ``+``,
unary ``-``, ``abs()``, ``scale(r)``, ``leq(other)`` for the pointwise
order and ``zero()``.  Integrals are plain callables returning exact
:class:`~fractions.Fraction` values.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Protocol, Sequence, runtime_checkable

from .errors import DomainMismatchError, InsufficientSamplesError
from .rational import HALF, as_fraction


@runtime_checkable
class RieszElement(Protocol):
    def __add__(self, other): ...

    def __neg__(self): ...

    def __abs__(self): ...

    def scale(self, r): ...

    def leq(self, other) -> bool: ...

    def zero(self): ...


@runtime_checkable
class Integral(Protocol):
    descriptor: str

    def __call__(self, f) -> Fraction: ...


def _same_space(f, g) -> None:
    if type(f) is not type(g):
        raise DomainMismatchError(
            f"cannot combine {type(f).__name__} with {type(g).__name__}"
        )


def derive_lattice_ops(f, g):
    """Return ``(sup(f, g), inf(f, g))`` from ``+``, scaling and ``abs``.

    >>> from daniell.finite import FiniteFunction
    >>> s, i = derive_lattice_ops(FiniteFunction([1, -1]), FiniteFunction([0, 0]))
    >>> s.values, i.values
    ((Fraction(1, 1), Fraction(0, 1)), (Fraction(0, 1), Fraction(-1, 1)))
    """
    _same_space(f, g)
    total = f + g
    gap = abs(f + g.scale(-1))
    return (total + gap).scale(HALF), (total + gap.scale(-1)).scale(HALF)


def positive_part(f):
    return (f + abs(f)).scale(HALF)


def negative_part(f):
    """``f⁻`` with ``f = f⁺ - f⁻`` and both parts nonnegative."""
    return (abs(f) + f.scale(-1)).scale(HALF)


# --------------------------------------------------------------------------
# axiom harness

AXIOMS = ("i", "ii", "iii", "iii_two_sided", "iv")

_AXIOM_TITLES = {
    "i": "additivity",
    "ii": "homogeneity",
    "iii": "monotonicity I(f) <= I(|f|)",
    "iii_two_sided": "|I(f)| <= I(|f|)",
    "iv": "continuity along certified chains",
}

DEFAULT_SCALARS = (Fraction(-2), Fraction(-1, 3), Fraction(0), Fraction(1, 2), Fraction(3))


@dataclass
class AxiomCheck:
    name: str
    passed: bool = True
    checked: int = 0
    counterexample: Any = None
    detail: str = ""

    @property
    def title(self) -> str:
        return _AXIOM_TITLES[self.name]

    def fail(self, counterexample, detail: str) -> None:
        if self.passed:
            self.passed = False
            self.counterexample = counterexample
            self.detail = detail


@dataclass
class AxiomReport:
    descriptor: str
    checks: dict = field(default_factory=lambda: {name: AxiomCheck(name) for name in AXIOMS})

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks.values())

    def __getitem__(self, name: str) -> AxiomCheck:
        return self.checks[name]

    def failed(self) -> list[str]:
        return [name for name, check in self.checks.items() if not check.passed]

    def summary(self) -> str:
        lines = [f"axiom report for {self.descriptor}"]
        for check in self.checks.values():
            status = "pass" if check.passed else "FAIL"
            label = f"({check.name}) {check.title}"
            lines.append(f"  {label:<52} {status}  [{check.checked} checks]")
            if not check.passed:
                lines.append(f"      {check.detail}")
        return "\n".join(lines)


def _check_chain(report: AxiomReport, integral, chain, probe_levels: int, tolerance: Fraction) -> None:
    check = report["iv"]
    previous_element = None
    previous_value = None
    for level in range(probe_levels + 1):
        n = 2**level
        element = chain(n)
        value = as_fraction(integral(element))
        check.checked += 1
        if not element.zero().leq(element):
            check.fail((n, element), f"chain member {n} is not nonnegative")
            return
        if previous_element is not None and not element.leq(previous_element):
            check.fail((n, element), f"chain member {n} exceeds member {n // 2}")
            return
        if previous_value is not None and value > previous_value:
            check.fail((n, value), f"I(f_{n}) = {value} > I(f_{n // 2}) = {previous_value}")
            return
        if value < 0:
            check.fail((n, value), f"I(f_{n}) = {value} < 0 on a nonnegative member")
            return
        if value <= tolerance:
            return
        previous_element, previous_value = element, value
    if previous_value > tolerance:
        check.fail(
            (2**probe_levels, previous_value),
            f"I(f_n) stalls at {previous_value} > {tolerance} by n = {2**probe_levels}",
        )


def check_integral_axioms(
    space_sampler: Iterable,
    integral: Callable,
    chain_supplier: Iterable[Callable[[int], Any]] = (),
    trials: int = 50,
    *,
    scalars: Sequence = DEFAULT_SCALARS,
    tolerance=Fraction(1, 10**6),
    probe_levels: int = 64,
) -> AxiomReport:
    """Check Daniell axioms (i)-(iv) for ``integral`` on sampled elements.

    ``space_sampler`` yields elements; ``2 * trials`` of them are consumed as
    ``trials`` pairs.  Axioms (i)-(iii) are exact rational checks.  Each chain
    from ``chain_supplier`` is a pure function ``n -> f_n`` whose members are,
    by construction, decreasing with pointwise infimum zero; it is probed at
    ``n = 1, 2, 4, ..., 2**probe_levels`` and must show nonincreasing integrals
    that drop to ``tolerance`` or below; probing stops there.

    Raises :class:`InsufficientSamplesError` (carrying the partial report)
    when the sampler is exhausted early.
    """
    descriptor = getattr(integral, "descriptor", repr(integral))
    report = AxiomReport(descriptor)
    tolerance = as_fraction(tolerance)
    samples = iter(space_sampler)
    scalar_cycle = itertools.cycle([as_fraction(s) for s in scalars])

    for trial in range(trials):
        try:
            f = next(samples)
            g = next(samples)
        except StopIteration:
            raise InsufficientSamplesError(
                f"sampler exhausted after {trial} of {trials} trials", report
            ) from None
        r = next(scalar_cycle)
        i_f, i_g = integral(f), integral(g)

        lhs = integral(f + g)
        report["i"].checked += 1
        if lhs != i_f + i_g:
            report["i"].fail((f, g), f"I(f+g) = {lhs} but I(f)+I(g) = {i_f + i_g}")

        scaled = integral(f.scale(r))
        report["ii"].checked += 1
        if scaled != r * i_f:
            report["ii"].fail((r, f), f"I({r}f) = {scaled} but {r}I(f) = {r * i_f}")

        for h, i_h in ((f, i_f), (g, i_g)):
            i_abs = integral(abs(h))
            report["iii"].checked += 1
            report["iii_two_sided"].checked += 1
            if not i_h <= i_abs:
                report["iii"].fail(h, f"I(f) = {i_h} > I(|f|) = {i_abs}")
            if not abs(i_h) <= i_abs:
                report["iii_two_sided"].fail(h, f"|I(f)| = {abs(i_h)} > I(|f|) = {i_abs}")

    for chain in chain_supplier:
        _check_chain(report, integral, chain, probe_levels, tolerance)
    return report


# --------------------------------------------------------------------------
# closure corpora


def closure_corpus(
    generators: Iterable,
    depth: int,
    budget: int,
    scalars: Sequence = (Fraction(-1), Fraction(2), Fraction(1, 2)),
) -> list:
    """Close ``generators`` under ``+``, scaling and ``abs`` for ``depth`` rounds.

    Round 0 holds the generators and their scalings.  Each later round adds
    ``abs`` images, pairwise sums and scalings of everything seen so far.
    The result is deduplicated and capped at ``budget`` elements, with the
    remaining budget spread evenly over the rounds still to come so that
    deeper elements are represented.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    scalars = [as_fraction(s) for s in scalars]
    seen: dict = {}

    def offer(element, quota_end) -> bool:
        if len(seen) >= quota_end:
            return False
        seen.setdefault(element, None)
        return len(seen) < quota_end

    gens = list(generators)
    quota = budget if depth == 0 else min(budget, max(len(gens), math.ceil(budget / (depth + 1))))
    for e in gens:
        offer(e, quota)
    for e in gens:
        for s in scalars:
            offer(e.scale(s), quota)

    for round_ in range(1, depth + 1):
        snapshot = list(seen)
        remaining_rounds = depth - round_ + 1
        quota = len(seen) + math.ceil((budget - len(seen)) / remaining_rounds)
        quota = min(quota, budget)

        def candidates():
            for e in snapshot:
                yield abs(e)
            for a, b in itertools.combinations(snapshot, 2):
                yield a + b
            for e in snapshot:
                for s in scalars:
                    yield e.scale(s)

        for candidate in candidates():
            if not offer(candidate, quota):
                break
    return list(seen)[:budget]


def is_zero(f) -> bool:
    return f == f.zero()

