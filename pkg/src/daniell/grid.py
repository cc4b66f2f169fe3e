"""2-D step functions on product partitions.

A :class:`GridFunction` has x-breakpoints, y-breakpoints and a value matrix
whose row ``j`` / column ``l`` is the value on ``[x_j, x_{j+1}) x [y_l, y_{l+1})``.
The function vanishes outside the bounding rectangle.  The canonical form
keeps exactly the grid lines across which the function jumps somewhere.
"""
from __future__ import annotations

import bisect
import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

from .errors import MalformedInputError
from .rational import ZERO, as_fraction, format_rational

Matrix = tuple[tuple[Fraction, ...], ...]

_OPS = {"+": operator.add, "-": operator.sub, "*": operator.mul, "sup": max, "inf": min}


def _canonical_rows(breaks: list, rows: list):
    """Drop zero boundary rows and merge equal neighbouring rows."""
    keep_b, keep_r = [], []
    for j, row in enumerate(rows):
        a, b = breaks[j], breaks[j + 1]
        if a == b:
            continue
        if not keep_r:
            if any(v != 0 for v in row):
                keep_b.extend((a, b))
                keep_r.append(row)
        elif keep_r[-1] == row:
            keep_b[-1] = b
        else:
            keep_b.append(b)
            keep_r.append(row)
    while keep_r and all(v == 0 for v in keep_r[-1]):
        keep_r.pop()
        keep_b.pop()
    if not keep_r:
        return [], []
    return keep_b, keep_r


def _transpose(rows):
    return [tuple(col) for col in zip(*rows)]


@dataclass(frozen=True)
class GridFunction:
    x_breakpoints: tuple[Fraction, ...] = ()
    y_breakpoints: tuple[Fraction, ...] = ()
    cells: Matrix = ()

    def __post_init__(self):
        try:
            xs = [as_fraction(x) for x in self.x_breakpoints]
            ys = [as_fraction(y) for y in self.y_breakpoints]
            rows = [tuple(as_fraction(v) for v in row) for row in self.cells]
        except ValueError as exc:
            raise MalformedInputError(str(exc)) from None
        if not rows and not xs and not ys:
            return
        if len(rows) != len(xs) - 1 or any(len(r) != len(ys) - 1 for r in rows):
            raise MalformedInputError(
                f"cell matrix must be {len(xs) - 1} x {len(ys) - 1} for the given breakpoints"
            )
        for seq in (xs, ys):
            if any(b < a for a, b in zip(seq, seq[1:])):
                raise MalformedInputError("grid breakpoints must be nondecreasing")
        xs, rows = _canonical_rows(xs, rows)
        if rows:
            ys, cols = _canonical_rows(ys, _transpose(rows))
            rows = _transpose(cols)
        if not rows:
            xs, ys = [], []
        object.__setattr__(self, "x_breakpoints", tuple(xs))
        object.__setattr__(self, "y_breakpoints", tuple(ys))
        object.__setattr__(self, "cells", tuple(rows))

    @classmethod
    def from_json(cls, data: dict) -> "GridFunction":
        xs, ys = data["x_breakpoints"], data["y_breakpoints"]
        flat = list(data["cells"])
        ny = max(len(ys) - 1, 0)
        rows = [tuple(flat[j * ny:(j + 1) * ny]) for j in range(max(len(xs) - 1, 0))]
        if len(flat) != ny * max(len(xs) - 1, 0):
            raise MalformedInputError("cell list length does not match the grid")
        return cls(tuple(xs), tuple(ys), tuple(rows))

    def to_json(self) -> dict:
        """Row-major wire format with ``"p/q"`` rationals."""
        return {
            "kind": "grid",
            "x_breakpoints": [format_rational(x) for x in self.x_breakpoints],
            "y_breakpoints": [format_rational(y) for y in self.y_breakpoints],
            "cells": [format_rational(v) for row in self.cells for v in row],
        }

    # -- evaluation ---------------------------------------------------------

    def __call__(self, x, y) -> Fraction:
        x, y = as_fraction(x), as_fraction(y)
        xs, ys = self.x_breakpoints, self.y_breakpoints
        if not xs or x < xs[0] or x >= xs[-1] or y < ys[0] or y >= ys[-1]:
            return ZERO
        return self.cells[bisect.bisect_right(xs, x) - 1][bisect.bisect_right(ys, y) - 1]

    def at(self, point) -> Fraction:
        return self(*point)

    def is_zero(self) -> bool:
        return not self.cells

    def values_on(self, xs: Sequence[Fraction], ys: Sequence[Fraction]) -> list[list[Fraction]]:
        """Value matrix on a refinement grid containing all own grid lines."""
        own_x, own_y = self.x_breakpoints, self.y_breakpoints
        row_index = _cell_index(own_x, xs)
        col_index = _cell_index(own_y, ys)
        out = []
        for j in row_index:
            if j is None:
                out.append([ZERO] * len(col_index))
            else:
                row = self.cells[j]
                out.append([ZERO if l is None else row[l] for l in col_index])
        return out

    def flat_values(self) -> list[Fraction]:
        return [v for row in self.cells for v in row]

    # -- Riesz-space protocol -----------------------------------------------

    def __add__(self, other):
        return combine(self, other, "+")

    def __sub__(self, other):
        return combine(self, other, "-")

    def __neg__(self):
        return GridFunction(self.x_breakpoints, self.y_breakpoints,
                            tuple(tuple(-v for v in row) for row in self.cells))

    def __abs__(self):
        return GridFunction(self.x_breakpoints, self.y_breakpoints,
                            tuple(tuple(abs(v) for v in row) for row in self.cells))

    def scale(self, r):
        r = as_fraction(r)
        return GridFunction(self.x_breakpoints, self.y_breakpoints,
                            tuple(tuple(r * v for v in row) for row in self.cells))

    def leq(self, other) -> bool:
        diff = combine(other, self, "-")
        return all(v >= 0 for row in diff.cells for v in row)

    def zero(self):
        return GridFunction()

    def __repr__(self):
        if not self.cells:
            return "GridFunction(0)"
        return (f"GridFunction(x={list(map(str, self.x_breakpoints))}, "
                f"y={list(map(str, self.y_breakpoints))}, "
                f"cells={[list(map(str, r)) for r in self.cells]})")


def _cell_index(own: Sequence[Fraction], grid: Sequence[Fraction]) -> list:
    """For each cell of ``grid``, the index of the own cell containing it."""
    out = []
    pos = 0
    for left in grid[:-1]:
        while pos < len(own) and own[pos] <= left:
            pos += 1
        out.append(pos - 1 if 0 < pos < len(own) else None)
    return out


def common_refinement(*grids: GridFunction):
    """Shared grid lines and each function's value matrix on them."""
    xs = sorted(set().union(*(g.x_breakpoints for g in grids)))
    ys = sorted(set().union(*(g.y_breakpoints for g in grids)))
    return xs, ys, [g.values_on(xs, ys) for g in grids]


def combine(f: GridFunction, g: GridFunction, op: Union[str, Callable]) -> GridFunction:
    fn = _OPS[op] if isinstance(op, str) else op
    if f.is_zero() and g.is_zero():
        return GridFunction()
    xs, ys, (fv, gv) = common_refinement(f, g)
    rows = tuple(tuple(fn(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(fv, gv))
    return GridFunction(tuple(xs), tuple(ys), rows)
