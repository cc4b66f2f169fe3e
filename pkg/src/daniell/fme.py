"""Exact Fourier-Motzkin elimination for small systems ``A x <= b``.

Rows are pairs ``(coefficients, bound)`` meaning
``sum(c_i * x_i for i) <= bound``.  Variables are eliminated in ascending
index order; a feasible point is recovered by back-substitution.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

Row = tuple[tuple[Fraction, ...], Fraction]


def _normalize(row: Row) -> Row:
    coeffs, bound = row
    scale = next((abs(c) for c in coeffs if c != 0), None)
    if scale is None:
        return coeffs, bound
    return tuple(c / scale for c in coeffs), bound / scale


def eliminate(rows: Sequence[Row], var: int) -> list[Row]:
    """Project out variable ``var``; the result no longer mentions it."""
    upper, lower, keep = [], [], []
    for coeffs, bound in rows:
        c = coeffs[var]
        if c > 0:
            upper.append((coeffs, bound))
        elif c < 0:
            lower.append((coeffs, bound))
        else:
            keep.append((coeffs, bound))
    out = list(keep)
    for cu, bu in upper:
        for cl, bl in lower:
            wu, wl = -cl[var], cu[var]
            coeffs = tuple(wu * a + wl * b for a, b in zip(cu, cl))
            out.append((coeffs, wu * bu + wl * bl))
    unique = {}
    for row in out:
        unique.setdefault(_normalize(row), None)
    return list(unique)


def _bounds(rows: Sequence[Row], var: int, values: dict[int, Fraction]):
    lo, hi = None, None
    for coeffs, bound in rows:
        c = coeffs[var]
        if c == 0:
            continue
        rest = bound - sum(coeffs[j] * v for j, v in values.items())
        limit = rest / c
        if c > 0:
            hi = limit if hi is None else min(hi, limit)
        else:
            lo = limit if lo is None else max(lo, limit)
    return lo, hi


def feasible_point(rows: Sequence[Row], nvars: int) -> Optional[tuple[Fraction, ...]]:
    """Return some ``x`` with ``A x <= b``, or ``None`` if infeasible.

    >>> feasible_point([((Fraction(1),), Fraction(2)), ((Fraction(-1),), Fraction(-1))], 1)
    (Fraction(1, 1),)
    """
    rows = [(tuple(Fraction(c) for c in coeffs), Fraction(b)) for coeffs, b in rows]
    for coeffs, _ in rows:
        if len(coeffs) != nvars:
            raise ValueError("row length does not match the number of variables")
    stages = [rows]
    for var in range(nvars):
        stages.append(eliminate(stages[-1], var))
    if any(bound < 0 for _, bound in stages[-1]):
        return None

    values: dict[int, Fraction] = {}
    for var in reversed(range(nvars)):
        lo, hi = _bounds(stages[var], var, values)
        if lo is not None and hi is not None and lo > hi:
            # cannot happen for a consistent projection
            raise ArithmeticError("back-substitution found an empty interval")
        if lo is not None:
            values[var] = lo
        elif hi is not None:
            values[var] = hi
        else:
            values[var] = Fraction(0)
    return tuple(values[i] for i in range(nvars))
