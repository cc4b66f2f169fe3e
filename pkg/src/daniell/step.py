"""Canonical 1-D step functions on half-open rational intervals.

A step function is stored as breakpoints ``b_0 < ... < b_m`` and plateau
values ``v_0 .. v_{m-1}`` with ``f = v_j`` on ``[b_j, b_{j+1})`` and ``f = 0``
outside ``[b_0, b_m)``.  Every constructor returns the canonical form (no
equal neighbouring plateaus, no zero plateau at either end), so equality of
functions is equality of the stored tuples.
"""
from __future__ import annotations

import bisect
import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .errors import MalformedInputError
from .rational import ONE, ZERO, as_fraction, format_rational

_OPS: dict[str, Callable[[Fraction, Fraction], Fraction]] = {
    "+": operator.add,
    "-": operator.sub,
    "*": operator.mul,
    "sup": max,
    "inf": min,
}


def _canonical(breaks: Sequence[Fraction], values: Sequence[Fraction]):
    if len(breaks) == 0 and len(values) == 0:
        return (), ()
    if len(values) != len(breaks) - 1:
        raise MalformedInputError(
            f"{len(breaks)} breakpoints need {len(breaks) - 1} values, got {len(values)}"
        )
    for a, b in zip(breaks, breaks[1:]):
        if b < a:
            raise MalformedInputError(f"breakpoints decrease: {a} > {b}")
    # zero-length cells drop out; the remaining cells stay contiguous
    segments = [(breaks[j], breaks[j + 1], v) for j, v in enumerate(values) if breaks[j] != breaks[j + 1]]
    out_b: list[Fraction] = []
    out_v: list[Fraction] = []
    for a, b, v in segments:
        if not out_v:
            if v != 0:
                out_b.extend((a, b))
                out_v.append(v)
        elif out_v[-1] == v:
            out_b[-1] = b
        else:
            out_b.append(b)
            out_v.append(v)
    while out_v and out_v[-1] == 0:
        out_v.pop()
        out_b.pop()
    if not out_v:
        return (), ()
    return tuple(out_b), tuple(out_v)


@dataclass(frozen=True)
class StepFunction1D:
    breakpoints: tuple[Fraction, ...] = ()
    values: tuple[Fraction, ...] = ()

    def __post_init__(self):
        try:
            breaks = tuple(as_fraction(b) for b in self.breakpoints)
            values = tuple(as_fraction(v) for v in self.values)
        except ValueError as exc:
            raise MalformedInputError(str(exc)) from None
        breaks, values = _canonical(breaks, values)
        object.__setattr__(self, "breakpoints", breaks)
        object.__setattr__(self, "values", values)

    # -- construction -------------------------------------------------------

    @classmethod
    def indicator(cls, a, b, value=1) -> "StepFunction1D":
        """``value * 1_[a, b)``."""
        return cls((a, b), (value,))

    @classmethod
    def from_json(cls, data: dict) -> "StepFunction1D":
        return cls(tuple(data["breakpoints"]), tuple(data["values"]))

    def to_json(self) -> dict:
        return {
            "kind": "step",
            "breakpoints": [format_rational(b) for b in self.breakpoints],
            "values": [format_rational(v) for v in self.values],
        }

    # -- evaluation ---------------------------------------------------------

    def __call__(self, x) -> Fraction:
        x = as_fraction(x)
        b = self.breakpoints
        if not b or x < b[0] or x >= b[-1]:
            return ZERO
        return self.values[bisect.bisect_right(b, x) - 1]

    at = __call__

    def values_on(self, grid: Sequence[Fraction]) -> list[Fraction]:
        """Values on the cells ``[grid[j], grid[j+1])`` of a refinement.

        ``grid`` must be sorted and contain every breakpoint of ``self``.
        """
        out = []
        b, v = self.breakpoints, self.values
        pos = 0
        for left in grid[:-1]:
            while pos < len(b) and b[pos] <= left:
                pos += 1
            # pos - 1 is the last breakpoint <= left
            out.append(v[pos - 1] if 0 < pos < len(b) else ZERO)
        return out

    @property
    def support_hull(self) -> Optional[tuple[Fraction, Fraction]]:
        if not self.breakpoints:
            return None
        return self.breakpoints[0], self.breakpoints[-1]

    def is_zero(self) -> bool:
        return not self.values

    def max_value(self) -> Fraction:
        """Supremum of the function, counting the zero outside the support."""
        return max((ZERO, *self.values))

    def max_abs(self) -> Fraction:
        return max((ZERO, *(abs(v) for v in self.values)))

    # -- Riesz-space protocol -----------------------------------------------

    def __add__(self, other):
        return combine(self, other, "+")

    def __sub__(self, other):
        return combine(self, other, "-")

    def __mul__(self, other):
        if isinstance(other, StepFunction1D):
            return combine(self, other, "*")
        return self.scale(other)

    def __rmul__(self, r):
        return self.scale(r)

    def __neg__(self):
        return StepFunction1D(self.breakpoints, tuple(-v for v in self.values))

    def __abs__(self):
        return StepFunction1D(self.breakpoints, tuple(abs(v) for v in self.values))

    def scale(self, r):
        r = as_fraction(r)
        return StepFunction1D(self.breakpoints, tuple(r * v for v in self.values))

    def leq(self, other) -> bool:
        return all(v >= 0 for v in combine(other, self, "-").values)

    def zero(self):
        return StepFunction1D()

    def unit(self):
        """Indicator of the support hull; the algebra has no global unit."""
        hull = self.support_hull
        return StepFunction1D() if hull is None else StepFunction1D.indicator(*hull)

    def support_indicator(self):
        return StepFunction1D(self.breakpoints, tuple(ONE if v != 0 else ZERO for v in self.values))

    def restrict_to_support(self, g):
        """``self * 1_{U(g)}`` where ``U(g) = {g != 0}``."""
        return combine(self, g.support_indicator(), "*")

    def __repr__(self):
        if not self.values:
            return "StepFunction1D(0)"
        parts = [
            f"{v}@[{a},{b})" for a, b, v in zip(self.breakpoints, self.breakpoints[1:], self.values)
        ]
        return "StepFunction1D(" + " ".join(parts) + ")"


def canonicalize(breakpoints: Sequence, values: Sequence) -> StepFunction1D:
    """Build the canonical step function from a raw breakpoint/value list."""
    return StepFunction1D(tuple(breakpoints), tuple(values))


def merged_breakpoints(*functions: StepFunction1D) -> list[Fraction]:
    return sorted(set().union(*(f.breakpoints for f in functions)))


def combine(f: StepFunction1D, g: StepFunction1D, op: Union[str, Callable]) -> StepFunction1D:
    """Pointwise ``op(f, g)`` on the common refinement of both partitions.

    ``op`` is one of ``"+"``, ``"-"``, ``"*"``, ``"sup"``, ``"inf"`` or a
    binary callable with ``op(0, 0) == 0``.
    """
    fn = _OPS[op] if isinstance(op, str) else op
    grid = merged_breakpoints(f, g)
    if not grid:
        return StepFunction1D()
    fv, gv = f.values_on(grid), g.values_on(grid)
    return StepFunction1D(tuple(grid), tuple(fn(a, b) for a, b in zip(fv, gv)))


def scale(r, f: StepFunction1D) -> StepFunction1D:
    return f.scale(r)


# --------------------------------------------------------------------------
# elementary integrals


@dataclass(frozen=True)
class ElementaryIntegral1D:
    """Lebesgue measure (``density is None``) or an absolutely continuous
    Stieltjes measure with a nonnegative step density.

    The density is the slope table of a nondecreasing piecewise-linear
    distribution function, so interval weights stay rational.
    """

    density: Optional[StepFunction1D] = None
    label: str = ""

    def __post_init__(self):
        if self.density is not None and any(v < 0 for v in self.density.values):
            raise MalformedInputError("Stieltjes slopes must be nonnegative")

    @classmethod
    def lebesgue(cls) -> "ElementaryIntegral1D":
        return cls()

    @classmethod
    def stieltjes(cls, breakpoints, slopes, label: str = "") -> "ElementaryIntegral1D":
        return cls(StepFunction1D(tuple(breakpoints), tuple(slopes)), label)

    @property
    def mode(self) -> str:
        return "lebesgue" if self.density is None else "stieltjes"

    @property
    def descriptor(self) -> str:
        if self.label:
            return self.label
        return self.mode if self.density is None else f"stieltjes(density {self.density!r})"

    def interval_weight(self, a, b) -> Fraction:
        """Mass of the half-open interval ``[a, b)``."""
        a, b = as_fraction(a), as_fraction(b)
        if b <= a:
            return ZERO
        if self.density is None:
            return b - a
        return _lebesgue(combine(StepFunction1D.indicator(a, b), self.density, "*"))

    def cell_weights(self, grid: Sequence[Fraction]) -> list[Fraction]:
        return [self.interval_weight(a, b) for a, b in zip(grid, grid[1:])]

    def __call__(self, f: StepFunction1D) -> Fraction:
        return elementary_integral(self, f)

    def to_json(self) -> dict:
        if self.density is None:
            return {"kind": "lebesgue"}
        return {"kind": "stieltjes", "density": self.density.to_json()}


def _lebesgue(f: StepFunction1D) -> Fraction:
    b = f.breakpoints
    return sum((v * (b[j + 1] - b[j]) for j, v in enumerate(f.values)), ZERO)


def elementary_integral(J: ElementaryIntegral1D, f: StepFunction1D) -> Fraction:
    if J.density is None:
        return _lebesgue(f)
    return _lebesgue(combine(f, J.density, "*"))


# --------------------------------------------------------------------------
# f * 1_{U(g)} as a monotone limit


def lemma1_sequence(f: StepFunction1D, g: StepFunction1D, n: int) -> StepFunction1D:
    """``f_n = inf(f, n|g|)`` for nonnegative ``f``."""
    if n < 1:
        raise ValueError("sequence index starts at 1")
    if any(v < 0 for v in f.values):
        raise ValueError("the monotone sequence needs f >= 0; split f into f+ and f- first")
    return combine(f, abs(g).scale(n), "inf")


def closed_form(f: StepFunction1D, g: StepFunction1D) -> StepFunction1D:
    """``f * 1_{U(g)}`` for arbitrary ``f``."""
    return f.restrict_to_support(g)


def stationarity_index(f: StepFunction1D, g: StepFunction1D) -> int:
    """``ceil(max f / min |g|)`` over the overlap of both supports, at least 1.

    From this index on ``inf(f, n|g|)`` equals ``f * 1_{U(g)}``.
    """
    grid = merged_breakpoints(f, g)
    if not grid:
        return 1
    fv, gv = f.values_on(grid), g.values_on(grid)
    overlap = [(a, abs(b)) for a, b in zip(fv, gv) if a != 0 and b != 0]
    if not overlap:
        return 1
    top = max(a for a, _ in overlap)
    bottom = min(b for _, b in overlap)
    return max(1, math.ceil(top / bottom))
