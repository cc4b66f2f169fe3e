"""Sections, partial integrals and the product integral ``I(f) = J(Kf)``.

``J`` integrates over x and ``K`` over y.  Both iterated orders are always
evaluated by :func:`product_integral`; a disagreement is a hard error.
"""
from __future__ import annotations

import bisect

from fractions import Fraction

from .errors import DomainMismatchError, FubiniDiscrepancyError
from .finite import FiniteFunction, FiniteGrid, WeightedIntegral
from .grid import GridFunction
from .rational import ZERO, as_fraction
from .step import ElementaryIntegral1D, StepFunction1D
from .tensor import TensorElement, flatten

X, Y = "x", "y"


def _check_axis(axis: str) -> None:
    if axis not in (X, Y):
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")


def section(f, axis: str, at):
    """The one-variable function left after freezing one coordinate.

    ``section(f, "x", x0)`` is ``y -> f(x0, y)``; ``section(f, "y", y0)`` is
    ``x -> f(x, y0)``.  For a :class:`FiniteGrid` ``at`` is an index.
    """
    _check_axis(axis)
    if isinstance(f, FiniteGrid):
        if axis == X:
            return FiniteFunction(f.cells[at])
        return FiniteFunction(row[at] for row in f.cells)
    at = as_fraction(at)
    xs, ys = f.x_breakpoints, f.y_breakpoints
    if f.is_zero():
        return StepFunction1D()
    if axis == X:
        if at < xs[0] or at >= xs[-1]:
            return StepFunction1D()
        j = _locate(xs, at)
        return StepFunction1D(ys, f.cells[j])
    if at < ys[0] or at >= ys[-1]:
        return StepFunction1D()
    col = _locate(ys, at)
    return StepFunction1D(xs, tuple(row[col] for row in f.cells))


def _locate(breaks, value) -> int:
    return bisect.bisect_right(breaks, value) - 1


def partial_integral(K, f, axis: str = Y):
    """Integrate ``f`` over ``axis`` and return a function of the other one.

    With ``axis="y"`` this is ``Kf(x) = K(f^x)``; with ``axis="x"`` it is
    ``Jf(y) = J(f_y)``.  Computed as a matrix-vector product of cell values
    and 1-D cell weights.
    """
    _check_axis(axis)
    if isinstance(f, FiniteGrid):
        if not isinstance(K, WeightedIntegral):
            raise DomainMismatchError("finite grids need weighted-sum integrals")
        nx, ny = f.shape
        if axis == Y:
            w = K.cell_weights(ny)
            return FiniteFunction(sum((a * b for a, b in zip(row, w)), ZERO) for row in f.cells)
        w = K.cell_weights(nx)
        return FiniteFunction(
            sum((f.cells[i][j] * w[i] for i in range(nx)), ZERO) for j in range(ny)
        )
    if not isinstance(K, ElementaryIntegral1D):
        raise DomainMismatchError("grid functions need elementary 1-D integrals")
    if f.is_zero():
        return StepFunction1D()
    xs, ys = f.x_breakpoints, f.y_breakpoints
    if axis == Y:
        w = K.cell_weights(ys)
        return StepFunction1D(xs, tuple(sum((a * b for a, b in zip(row, w)), ZERO) for row in f.cells))
    w = K.cell_weights(xs)
    return StepFunction1D(
        ys, tuple(sum((f.cells[i][j] * w[i] for i in range(len(w))), ZERO) for j in range(len(ys) - 1))
    )


def iterated_integral(J, K, f, order: str = "xy") -> Fraction:
    """``J(Kf)`` for ``order="xy"`` (rows first) or ``K(Jf)`` for ``"yx"``."""
    if order == "xy":
        return J(partial_integral(K, f, Y))
    if order == "yx":
        return K(partial_integral(J, f, X))
    raise ValueError(f"order must be 'xy' or 'yx', got {order!r}")


def cellwise_integral(J, K, f) -> Fraction:
    """``sum_{j,l} f_{jl} J(cell_j) K(cell_l)`` without any partial integral."""
    if isinstance(f, FiniteGrid):
        nx, ny = f.shape
        wx, wy = J.cell_weights(nx), K.cell_weights(ny)
    else:
        if f.is_zero():
            return ZERO
        wx, wy = J.cell_weights(f.x_breakpoints), K.cell_weights(f.y_breakpoints)
    total = ZERO
    for row, a in zip(f.cells, wx):
        for v, b in zip(row, wy):
            total += v * a * b
    return total


def product_integral(J, K, f) -> Fraction:
    """``I(f) = J(Kf)``, cross-checked against ``K(Jf)``.

    ``f`` may also be a :class:`~daniell.tensor.TensorElement`; it is
    flattened first.
    """
    if isinstance(f, TensorElement):
        f = flatten(f)
        if isinstance(f, GridFunction) and isinstance(J, WeightedIntegral):
            return ZERO  # empty tensor
    rows_first = iterated_integral(J, K, f, "xy")
    cols_first = iterated_integral(J, K, f, "yx")
    if rows_first != cols_first:
        raise FubiniDiscrepancyError(f"J(Kf) = {rows_first} but K(Jf) = {cols_first}")
    return rows_first


class ProductIntegral:
    """``J (x) K`` as a callable integral on 2-D functions."""

    def __init__(self, J, K):
        self.J, self.K = J, K

    @property
    def descriptor(self) -> str:
        return f"{getattr(self.J, 'descriptor', self.J)} (x) {getattr(self.K, 'descriptor', self.K)}"

    def __call__(self, f) -> Fraction:
        return product_integral(self.J, self.K, f)


def theorem1_residual(J, K, f, g) -> Fraction:
    """``I(f (x) g) - J(f) K(g)``; exactly zero for a correct product integral."""
    if isinstance(f, FiniteFunction) != isinstance(g, FiniteFunction):
        raise DomainMismatchError("factors must both be finite or both be step functions")
    t = TensorElement.simple(f, g)
    return product_integral(J, K, flatten(t)) - J(f) * K(g)
