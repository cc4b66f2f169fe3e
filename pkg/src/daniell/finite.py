"""Exact functions on a finite index set and weighted-sum integrals.

This is the brute-force world: every question about a finite domain can be
settled by looking at all coordinates.  It also hosts the exact decision
procedure for membership in the dominated-limit closure of a subspace.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import fme
from .errors import DomainMismatchError, MalformedInputError
from .rational import ONE, ZERO, as_fraction, format_rational
from .riesz import closure_corpus


def _coerce(values) -> tuple[Fraction, ...]:
    try:
        return tuple(as_fraction(v) for v in values)
    except ValueError as exc:
        raise MalformedInputError(str(exc)) from None


@dataclass(frozen=True)
class FiniteFunction:
    """A vector of exact rationals indexed by ``0 .. domain_size - 1``."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", _coerce(self.values))
        if not self.values:
            raise MalformedInputError("a finite domain needs at least one point")

    @classmethod
    def constant(cls, size: int, value=1) -> "FiniteFunction":
        return cls((as_fraction(value),) * size)

    @property
    def domain_size(self) -> int:
        return len(self.values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def at(self, point) -> Fraction:
        return self.values[point]

    __call__ = at

    def _check(self, other) -> None:
        if not isinstance(other, FiniteFunction) or len(other) != len(self):
            raise DomainMismatchError(
                f"domain of size {len(self)} cannot be combined with {other!r}"
            )

    def __add__(self, other):
        self._check(other)
        return FiniteFunction(a + b for a, b in zip(self.values, other.values))

    def __sub__(self, other):
        self._check(other)
        return FiniteFunction(a - b for a, b in zip(self.values, other.values))

    def __mul__(self, other):
        self._check(other)
        return FiniteFunction(a * b for a, b in zip(self.values, other.values))

    def __neg__(self):
        return FiniteFunction(-a for a in self.values)

    def __abs__(self):
        return FiniteFunction(abs(a) for a in self.values)

    def scale(self, r):
        r = as_fraction(r)
        return FiniteFunction(r * a for a in self.values)

    def leq(self, other) -> bool:
        self._check(other)
        return all(a <= b for a, b in zip(self.values, other.values))

    def zero(self):
        return FiniteFunction((ZERO,) * len(self))

    def unit(self):
        return FiniteFunction((ONE,) * len(self))

    def support_indicator(self):
        return FiniteFunction(ONE if a != 0 else ZERO for a in self.values)

    def restrict_to_support(self, g):
        """``self * 1_{g != 0}``."""
        self._check(g)
        return FiniteFunction(a if b != 0 else ZERO for a, b in zip(self.values, g.values))

    def max_abs(self) -> Fraction:
        return max(abs(a) for a in self.values)

    def to_json(self) -> dict:
        return {"kind": "finite", "values": [format_rational(v) for v in self.values]}

    def __repr__(self):
        return "FiniteFunction(" + ", ".join(str(v) for v in self.values) + ")"


@dataclass(frozen=True)
class FiniteGrid:
    """A function on the product of two finite index sets, rows indexed by x."""

    cells: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(_coerce(row) for row in self.cells)
        if not rows or not rows[0] or any(len(r) != len(rows[0]) for r in rows):
            raise MalformedInputError("finite grid needs a non-empty rectangular matrix")
        object.__setattr__(self, "cells", rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.cells), len(self.cells[0])

    def at(self, point) -> Fraction:
        i, j = point
        return self.cells[i][j]

    def __call__(self, i, j):
        return self.cells[i][j]

    def _check(self, other):
        if not isinstance(other, FiniteGrid) or other.shape != self.shape:
            raise DomainMismatchError(f"grid of shape {self.shape} cannot be combined with {other!r}")

    def _map2(self, other, op):
        self._check(other)
        return FiniteGrid(
            tuple(op(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(self.cells, other.cells)
        )

    def __add__(self, other):
        return self._map2(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._map2(other, lambda a, b: a - b)

    def __neg__(self):
        return FiniteGrid(tuple(-a for a in row) for row in self.cells)

    def __abs__(self):
        return FiniteGrid(tuple(abs(a) for a in row) for row in self.cells)

    def scale(self, r):
        r = as_fraction(r)
        return FiniteGrid(tuple(r * a for a in row) for row in self.cells)

    def leq(self, other) -> bool:
        self._check(other)
        return all(a <= b for ra, rb in zip(self.cells, other.cells) for a, b in zip(ra, rb))

    def zero(self):
        nx, ny = self.shape
        return FiniteGrid(((ZERO,) * ny,) * nx)

    def flat_values(self) -> list[Fraction]:
        return [v for row in self.cells for v in row]

    def to_json(self) -> dict:
        return {"kind": "finite_grid", "cells": [[format_rational(v) for v in row] for row in self.cells]}


@dataclass(frozen=True)
class WeightedIntegral:
    """``f -> sum_i w_i f(i)``.

    Nonnegative weights give a Daniell integral.  ``signed=True`` lifts the
    sign check and exists only to build counterexample fixtures.
    """

    weights: tuple[Fraction, ...]
    signed: bool = False
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "weights", _coerce(self.weights))
        if not self.weights:
            raise MalformedInputError("weights must be non-empty")
        if not self.signed and any(w < 0 for w in self.weights):
            raise MalformedInputError("Daniell weights must be nonnegative")

    @property
    def descriptor(self) -> str:
        if self.label:
            return self.label
        return "weights(" + ", ".join(str(w) for w in self.weights) + ")"

    @property
    def domain_size(self) -> int:
        return len(self.weights)

    def cell_weights(self, size: int) -> tuple[Fraction, ...]:
        if size != len(self.weights):
            raise DomainMismatchError(f"{len(self.weights)} weights for a domain of size {size}")
        return self.weights

    def __call__(self, f: FiniteFunction) -> Fraction:
        return integrate(self, f)


def integrate(w: WeightedIntegral, f: FiniteFunction) -> Fraction:
    if len(w.weights) != len(f.values):
        raise DomainMismatchError(
            f"{len(w.weights)} weights cannot integrate a function on {len(f.values)} points"
        )
    return sum((a * b for a, b in zip(w.weights, f.values)), ZERO)


# --------------------------------------------------------------------------
# subspaces and the dominated-limit closure


def _solve(columns: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[list[Fraction]]:
    """Solve ``sum_j c_j columns[j] = rhs`` exactly; ``None`` if inconsistent.

    Columns are assumed linearly independent, so a solution is unique.
    """
    nrows, ncols = len(rhs), len(columns)
    matrix = [[Fraction(columns[j][i]) for j in range(ncols)] + [Fraction(rhs[i])] for i in range(nrows)]
    pivot_row = 0
    pivots = []
    for col in range(ncols):
        pivot = next((r for r in range(pivot_row, nrows) if matrix[r][col] != 0), None)
        if pivot is None:
            continue
        matrix[pivot_row], matrix[pivot] = matrix[pivot], matrix[pivot_row]
        lead = matrix[pivot_row][col]
        matrix[pivot_row] = [v / lead for v in matrix[pivot_row]]
        for r in range(nrows):
            if r != pivot_row and matrix[r][col] != 0:
                factor = matrix[r][col]
                matrix[r] = [a - factor * b for a, b in zip(matrix[r], matrix[pivot_row])]
        pivots.append(col)
        pivot_row += 1
    if any(matrix[r][ncols] != 0 for r in range(pivot_row, nrows)):
        return None
    solution = [ZERO] * ncols
    for r, col in enumerate(pivots):
        solution[col] = matrix[r][ncols]
    return solution


def rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    rows = [list(map(Fraction, v)) for v in vectors]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(r + 1, len(rows)):
            factor = rows[i][col] / rows[r][col]
            rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


@dataclass(frozen=True)
class SubspaceBasis:
    """Linearly independent finite functions spanning a subspace ``M``."""

    basis: tuple[FiniteFunction, ...]

    def __post_init__(self):
        basis = tuple(b if isinstance(b, FiniteFunction) else FiniteFunction(b) for b in self.basis)
        object.__setattr__(self, "basis", basis)
        if not basis:
            raise MalformedInputError("a subspace basis needs at least one vector")
        size = basis[0].domain_size
        if any(b.domain_size != size for b in basis):
            raise DomainMismatchError("basis vectors live on different domains")
        if rank([b.values for b in basis]) != len(basis):
            raise MalformedInputError("basis vectors are linearly dependent")

    @property
    def domain_size(self) -> int:
        return self.basis[0].domain_size

    def combine(self, coefficients) -> FiniteFunction:
        total = self.basis[0].zero()
        for c, b in zip(coefficients, self.basis):
            total = total + b.scale(c)
        return total

    def coordinates(self, f: FiniteFunction) -> Optional[tuple[Fraction, ...]]:
        if f.domain_size != self.domain_size:
            raise DomainMismatchError("function and subspace live on different domains")
        solution = _solve([b.values for b in self.basis], f.values)
        return None if solution is None else tuple(solution)


@dataclass(frozen=True)
class DominatorWitness:
    """Basis coordinates of ``f`` and of a dominator ``f0 >= |f|`` in the span."""

    coefficients: tuple[Fraction, ...]
    dominator_coefficients: tuple[Fraction, ...]

    def function(self, m: SubspaceBasis) -> FiniteFunction:
        return m.combine(self.coefficients)

    def dominator(self, m: SubspaceBasis) -> FiniteFunction:
        return m.combine(self.dominator_coefficients)

    def verify(self, m: SubspaceBasis, f: FiniteFunction) -> bool:
        return self.function(m) == f and abs(f).leq(self.dominator(m))


def p_closure_membership(m: SubspaceBasis, f: FiniteFunction) -> Optional[DominatorWitness]:
    """Decide ``f`` in ``P(span m)`` and return a witness, or ``None``.

    On a finite domain a dominated pointwise limit of elements of a subspace
    stays in the subspace, so membership means ``f`` lies in the span and some
    ``f0`` in the span satisfies ``f0 >= |f|``.  The second condition is
    decided by exact Fourier-Motzkin elimination.

    >>> m = SubspaceBasis((FiniteFunction([1, -1]),))
    >>> p_closure_membership(m, FiniteFunction([1, -1])) is None
    True
    """
    coefficients = m.coordinates(f)
    if coefficients is None:
        return None
    # -sum_j c_j b_j(z) <= -|f(z)| for every point z
    rows = [
        (tuple(-b.values[z] for b in m.basis), -abs(f.values[z]))
        for z in range(m.domain_size)
    ]
    point = fme.feasible_point(rows, len(m.basis))
    if point is None:
        return None
    return DominatorWitness(coefficients, point)


def riesz_closure_samples(m: SubspaceBasis, depth: int, budget: int) -> list[FiniteFunction]:
    """Sample ``R(span m)`` by closing the basis under ``+``, scaling and ``abs``."""
    return closure_corpus(m.basis, depth, budget)
