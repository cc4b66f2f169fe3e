"""Witness trees for the dominated-limit closure chain ``U_{m+1} = P(U_m)``.

A :class:`Leaf` holds a concrete element.  A :class:`Limit` holds a
dominator certificate and a pure sequence ``n -> member`` whose members stay
below the dominator in absolute value and converge pointwise.  Evaluation
follows the sequence until it settles, either by a declared stationarity
index, by an a-priori rate envelope, or by a Cauchy test on successive
values.  Failures are raised, never hidden.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Union

import gmpy2

from .errors import ConvergenceFailure, InvalidBoundError, InvalidCertificateError
from .finite import FiniteFunction
from .rational import HALF, ZERO, as_fraction
from .riesz import negative_part, positive_part
from .step import StepFunction1D, lemma1_sequence, stationarity_index
from .tensor import TensorElement, flatten, lemma6_approximation, lemma6_dominator


@dataclass(frozen=True)
class Leaf:
    element: object


@dataclass(frozen=True, eq=False)
class Limit:
    """Pointwise limit of ``sequence(n)``, ``n >= 1``, dominated by ``dominator``.

    ``stationarity_hint`` claims the sequence is constant from that index on.
    ``rate_envelope`` claims ``|limit - member(n)| <= rate_envelope / n``
    pointwise, which fixes the level needed for a given tolerance up front.
    """

    dominator: "WitnessTree"
    sequence: Callable[[int], object]
    stationarity_hint: Optional[int] = None
    rate_envelope: object = None
    _cache: dict = field(default_factory=dict, repr=False)

    def member(self, n: int) -> "WitnessTree":
        if n < 1:
            raise ValueError("sequence index starts at 1")
        if n not in self._cache:
            m = self.sequence(n)
            self._cache[n] = m if isinstance(m, (Leaf, Limit)) else Leaf(m)
        return self._cache[n]


WitnessTree = Union[Leaf, Limit]


@dataclass(frozen=True)
class Approximation:
    """A value together with a bound on its distance from the true limit.

    ``exact`` means ``gap == 0`` was established structurally (leaves and
    stationary sequences only).
    """

    value: Fraction
    gap: Fraction
    steps: int
    exact: bool


def chain_depth(w: WitnessTree) -> int:
    """Smallest ``m`` with the certified function in ``U_m``.

    Members are generated lazily, so the depth of a sequence is read off its
    first two members; constructors here always produce members of uniform
    depth.
    """
    if isinstance(w, Leaf):
        return 1
    inner = max(chain_depth(w.dominator), chain_depth(w.member(1)), chain_depth(w.member(2)))
    return inner + 1


# --------------------------------------------------------------------------
# evaluation


def _settle(w: Limit, value_of, tolerance: Fraction, max_steps: int, check, rate_size):
    """Shared limit logic for pointwise values and integrals."""
    dominator = value_of(w.dominator)

    def visit(n):
        approx = value_of(w.member(n))
        check(w, n, approx, dominator)
        return approx

    if w.stationarity_hint is not None:
        n = w.stationarity_hint
        here, after = visit(n), visit(n + 1)
        if here.exact and after.exact and here.value != after.value:
            raise InvalidCertificateError(
                f"sequence claimed stationary at {n} but moves from {here.value} to {after.value}"
            )
        return Approximation(here.value, here.gap, 2, here.exact)

    if tolerance <= 0:
        raise ValueError("tolerance must be positive unless the sequence is stationary")

    if w.rate_envelope is not None:
        size = rate_size(w.rate_envelope)
        n = max(1, math.ceil(size / tolerance))
        approx = visit(n)
        return Approximation(approx.value, approx.gap + size / n, 1, False)

    trajectory = []
    previous = visit(1)
    trajectory.append(previous.value)
    for n in range(2, max_steps + 1):
        current = visit(n)
        trajectory.append(current.value)
        gap = abs(current.value - previous.value)
        if gap < tolerance:
            return Approximation(current.value, gap + current.gap, n, False)
        previous = current
    raise ConvergenceFailure(
        f"no two successive values within {tolerance} after {max_steps} steps", trajectory
    )


def evaluate(w: WitnessTree, point, tolerance=Fraction(1, 10**6), max_steps: int = 200) -> Approximation:
    """Value of the certified function at ``point``.

    Leaves are exact.  Raises :class:`ConvergenceFailure` when a sequence does
    not settle and :class:`InvalidCertificateError` when a member escapes its
    dominator at ``point``.
    """
    tolerance = as_fraction(tolerance)

    def value_of(tree):
        if isinstance(tree, Leaf):
            return Approximation(as_fraction(tree.element.at(point)), ZERO, 0, True)
        return _settle(tree, value_of, tolerance, max_steps, check, lambda env: env.at(point))

    def check(tree, n, approx, dominator):
        if abs(approx.value) > dominator.value + dominator.gap + approx.gap:
            raise InvalidCertificateError(
                f"member {n} has |value| = {abs(approx.value)} above dominator {dominator.value} at {point!r}"
            )

    return value_of(w)


def extended_integral(integral: Callable, w: WitnessTree, tolerance=Fraction(1, 10**6),
                      max_steps: int = 200) -> Approximation:
    """The unique extension of ``integral`` evaluated on a certificate.

    Leaves go straight to ``integral``.  Where both a member and its
    dominator are leaves, domination is checked globally.
    """
    tolerance = as_fraction(tolerance)

    def value_of(tree):
        if isinstance(tree, Leaf):
            return Approximation(as_fraction(integral(tree.element)), ZERO, 0, True)
        return _settle(tree, value_of, tolerance, max_steps, check, integral)

    def check(tree, n, approx, dominator):
        member = tree.member(n)
        if isinstance(member, Leaf) and isinstance(tree.dominator, Leaf):
            if not abs(member.element).leq(tree.dominator.element):
                raise InvalidCertificateError(f"member {n} is not dominated")

    return value_of(w)


# --------------------------------------------------------------------------
# certificate algebra


def leaf(element) -> Leaf:
    return Leaf(element)


def constant_certificate(f, dominator) -> Limit:
    """The sequence ``f, f, f, ...`` under ``dominator``; absorbs ``f`` one level up."""
    dom = dominator if isinstance(dominator, (Leaf, Limit)) else Leaf(dominator)
    return Limit(dom, lambda n: Leaf(f), stationarity_hint=1)


def _promote(w: WitnessTree) -> Limit:
    if isinstance(w, Limit):
        return w
    return constant_certificate(w.element, abs(w.element))


def tree_sum(a: WitnessTree, b: WitnessTree) -> WitnessTree:
    """Certificate for the sum: sequences and dominators add termwise."""
    if isinstance(a, Leaf) and isinstance(b, Leaf):
        return Leaf(a.element + b.element)
    la, lb = _promote(a), _promote(b)
    hints = (la.stationarity_hint, lb.stationarity_hint)
    hint = max(hints) if None not in hints else None
    envelope = None
    if la.rate_envelope is not None and lb.rate_envelope is not None:
        envelope = la.rate_envelope + lb.rate_envelope
    return Limit(
        tree_sum(la.dominator, lb.dominator),
        lambda n: tree_sum(la.member(n), lb.member(n)),
        stationarity_hint=hint,
        rate_envelope=envelope,
    )


def tree_scale(r, w: WitnessTree) -> WitnessTree:
    r = as_fraction(r)
    if isinstance(w, Leaf):
        return Leaf(w.element.scale(r))
    envelope = None if w.rate_envelope is None else w.rate_envelope.scale(abs(r))
    return Limit(
        tree_scale(abs(r), w.dominator),
        lambda n: tree_scale(r, w.member(n)),
        stationarity_hint=w.stationarity_hint,
        rate_envelope=envelope,
    )


def abs_tree(w: WitnessTree, abs_leaf: Callable[[object], WitnessTree] = None) -> WitnessTree:
    """Certificate for ``|f|`` given one for ``f``.

    A limit ``f = lim f_n`` under ``f_0`` becomes ``|f| = lim |f_n|`` under
    the same dominator; leaves are handed to ``abs_leaf`` (default: the
    elementwise absolute value as a leaf).
    """
    if abs_leaf is None:
        abs_leaf = lambda e: Leaf(abs(e))  # noqa: E731
    if isinstance(w, Leaf):
        return abs_leaf(w.element)
    return Limit(
        w.dominator,
        lambda n: abs_tree(w.member(n), abs_leaf),
        stationarity_hint=w.stationarity_hint,
        rate_envelope=w.rate_envelope,
    )


# --------------------------------------------------------------------------
# built-in constructions


def lemma1_certificate(f: StepFunction1D, g: StepFunction1D) -> WitnessTree:
    """``f * 1_{U(g)}`` as the increasing limit of ``inf(f, n|g|)``.

    Signed ``f`` is split into positive and negative parts.
    """
    if all(v >= 0 for v in f.values):
        return Limit(
            Leaf(f),
            lambda n: Leaf(lemma1_sequence(f, g, n)),
            stationarity_hint=stationarity_index(f, g),
        )
    plus, minus = positive_part(f), negative_part(f)
    return tree_sum(lemma1_certificate(plus, g), tree_scale(-1, lemma1_certificate(minus, g)))


def lemma6_abs_certificate(t: TensorElement) -> Limit:
    """``|f|`` for ``f = flatten(t)`` as the limit of ``flatten(|f_n|)``.

    Dominator ``k g(x)h``; rate envelope ``2k g(x)h``.
    """
    k = t.k
    g, h = lemma6_dominator(t)
    envelope = flatten(TensorElement.simple(g, h)) if t.terms else flatten(t)
    return Limit(
        Leaf(envelope.scale(k)),
        lambda n: Leaf(flatten(lemma6_approximation(t, n).abs_f_n)),
        rate_envelope=envelope.scale(2 * k),
    )


# --------------------------------------------------------------------------
# square-root polynomials


@lru_cache(maxsize=None)
def _sqrt_coefficients(n: int) -> tuple[Fraction, ...]:
    if n == 1:
        return (ZERO,)
    p = _sqrt_coefficients(n - 1)
    square = [ZERO] * (2 * len(p) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(p):
            square[i + j] += a * b
    size = max(len(square), len(p), 2)
    out = [ZERO] * size
    out[1] += HALF
    for i, v in enumerate(square):
        out[i] -= v * HALF
    for i, v in enumerate(p):
        out[i] += v
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def sqrt_iterates(t, n_max: int) -> list:
    """``[p_1(t), ..., p_{n_max}(t)]`` as exact ``gmpy2.mpq`` values.

    Evaluated through the recursion itself; sizes double at every step, so
    GMP arithmetic keeps ``n_max`` around 20 affordable.
    """
    t = gmpy2.mpq(as_fraction(t).numerator, as_fraction(t).denominator)
    p = gmpy2.mpq(0)
    out = [p]
    for _ in range(n_max - 1):
        p = (t - p * p) / 2 + p
        out.append(p)
    return out


@dataclass(frozen=True)
class SqrtPolynomial:
    """``p_n`` from ``p_1 = 0``, ``p_{n+1}(t) = (t - p_n(t)^2)/2 + p_n(t)``.

    On ``[0, 1]`` these increase to ``sqrt(t)``.  Coefficients (ascending
    powers, degree ``2^(n-2)``) are materialized on first access.
    """

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("p_n is defined for n >= 1")

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return _sqrt_coefficients(self.n)

    @property
    def degree(self) -> int:
        return 0 if self.n == 1 else 2 ** (self.n - 2)

    def __call__(self, t) -> Fraction:
        value = sqrt_iterates(t, self.n)[-1]
        return Fraction(int(value.numerator), int(value.denominator))

    def apply(self, f):
        """``p_n(f)`` for an element of a function algebra (needs ``*``)."""
        q = f.zero()
        for _ in range(self.n - 1):
            q = (f - q * q).scale(HALF) + q
        return q


def sqrt_polynomial(n: int) -> SqrtPolynomial:
    return SqrtPolynomial(n)


def abs_certificate(f, bound) -> Limit:
    """``|f|`` as the limit of ``lam * p_n(f^2 / lam^2)``.

    ``f`` is a finite function or a step function with ``|f| <= lam``; the
    dominator is ``lam`` times the unit of the algebra (the support hull's
    indicator for step functions).
    """
    lam = as_fraction(bound)
    if lam <= 0:
        raise InvalidBoundError(f"bound must be positive, got {lam}")
    if not isinstance(f, (FiniteFunction, StepFunction1D)):
        raise TypeError(f"abs_certificate needs a function algebra element, got {type(f).__name__}")
    if f.max_abs() > lam:
        raise InvalidBoundError(f"|f| reaches {f.max_abs()} > {lam}")
    s = (f * f).scale(1 / (lam * lam))
    members = [f.zero()]

    def member(n):
        while len(members) < n:
            q = members[-1]
            members.append((s - q * q).scale(HALF) + q)
        return Leaf(members[n - 1].scale(lam))

    return Limit(Leaf(f.unit().scale(lam)), member)
