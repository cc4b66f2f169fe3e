"""Tensor products of elementary spaces and the partition approximation of |f|.

A :class:`TensorElement` is a formal sum ``sum_i g_i (x) h_i``.  Its
:func:`flatten` is the concrete two-variable function, a
:class:`~daniell.grid.GridFunction` for step-function factors or a
:class:`~daniell.finite.FiniteGrid` for finite-domain factors.

:func:`lemma6_approximation` builds, for a level ``n``, tensors ``f_n`` and
``|f_n|`` from the cells where every ratio ``g_i / g`` (resp. ``h_i / h``)
falls in a fixed ``1/n`` bracket, with ``g = sum |g_i|`` and ``h = sum |h_i|``.
It satisfies ``|f_n| <= k g(x)h`` and ``||f| - |f_n|| <= (2k/n) g(x)h``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainMismatchError, InvalidLevelError
from .finite import FiniteFunction, FiniteGrid
from .grid import GridFunction, common_refinement
from .rational import HALF, ONE, ZERO, as_fraction, format_rational
from .riesz import closure_corpus
from .step import StepFunction1D, merged_breakpoints


@dataclass(frozen=True)
class TensorElement:
    terms: tuple[tuple[object, object], ...] = ()

    def __post_init__(self):
        terms = tuple((g, h) for g, h in self.terms)
        object.__setattr__(self, "terms", terms)
        if terms:
            gx, hy = type(terms[0][0]), type(terms[0][1])
            for g, h in terms:
                if type(g) is not gx or type(h) is not hy:
                    raise DomainMismatchError("tensor terms mix different factor spaces")
            if gx is not hy:
                raise DomainMismatchError("both factors must be of the same kind")
            if gx is FiniteFunction:
                nx, ny = len(terms[0][0]), len(terms[0][1])
                if any(len(g) != nx or len(h) != ny for g, h in terms):
                    raise DomainMismatchError("finite factors have inconsistent domain sizes")
            elif gx is not StepFunction1D:
                raise DomainMismatchError(f"unsupported factor type {gx.__name__}")

    @classmethod
    def simple(cls, g, h) -> "TensorElement":
        return cls(((g, h),))

    @property
    def k(self) -> int:
        return len(self.terms)

    @property
    def kind(self) -> str:
        if not self.terms:
            return "empty"
        return "finite" if isinstance(self.terms[0][0], FiniteFunction) else "step"

    def __add__(self, other: "TensorElement") -> "TensorElement":
        return TensorElement(self.terms + other.terms)

    def scale(self, r) -> "TensorElement":
        r = as_fraction(r)
        return TensorElement(tuple((g.scale(r), h) for g, h in self.terms))

    def __neg__(self):
        return self.scale(-1)

    def to_json(self) -> list:
        return [[g.to_json(), h.to_json()] for g, h in self.terms]


# --------------------------------------------------------------------------
# flattening


def _factor_table(elements: Sequence):
    """Express factors on common cells.

    Returns ``(columns, rebuild)``: ``columns[i][j]`` is the value of
    ``elements[i]`` on cell ``j``; ``rebuild(values)`` turns a cell vector
    back into an element of the factor space.
    """
    first = elements[0]
    if isinstance(first, FiniteFunction):
        return [list(e.values) for e in elements], FiniteFunction
    grid = merged_breakpoints(*elements)
    if not grid:
        return [[] for _ in elements], lambda values: StepFunction1D()
    frozen = tuple(grid)
    return [e.values_on(grid) for e in elements], lambda values: StepFunction1D(frozen, tuple(values))


def _cells_of(element, grid_index: dict):
    """Nonzero plateaus of a step factor as ``(cell indices, value)`` pairs."""
    b, v = element.breakpoints, element.values
    for j, value in enumerate(v):
        if value != 0:
            yield range(grid_index[b[j]], grid_index[b[j + 1]]), value


def flatten(t: TensorElement):
    """``sum_i g_i(x) h_i(y)`` as a concrete two-variable function."""
    if not t.terms:
        return GridFunction()
    if t.kind == "finite":
        nx, ny = len(t.terms[0][0]), len(t.terms[0][1])
        acc = [[ZERO] * ny for _ in range(nx)]
        for g, h in t.terms:
            for a, gv in enumerate(g.values):
                if gv == 0:
                    continue
                row = acc[a]
                for b, hv in enumerate(h.values):
                    if hv != 0:
                        row[b] += gv * hv
        return FiniteGrid(tuple(map(tuple, acc)))
    xs = merged_breakpoints(*(g for g, _ in t.terms))
    ys = merged_breakpoints(*(h for _, h in t.terms))
    if not xs or not ys:
        return GridFunction()
    xi = {x: j for j, x in enumerate(xs)}
    yi = {y: j for j, y in enumerate(ys)}
    acc = [[ZERO] * (len(ys) - 1) for _ in range(len(xs) - 1)]
    for g, h in t.terms:
        hcells = list(_cells_of(h, yi))
        if not hcells:
            continue
        for xrange_, gv in _cells_of(g, xi):
            for yrange_, hv in hcells:
                prod = gv * hv
                for a in xrange_:
                    row = acc[a]
                    for b in yrange_:
                        row[b] += prod
    return GridFunction(tuple(xs), tuple(ys), tuple(map(tuple, acc)))


def aligned_values(*functions) -> list[list[Fraction]]:
    """Flat cell values of several 2-D functions on one common partition."""
    if isinstance(functions[0], FiniteGrid):
        return [f.flat_values() for f in functions]
    _, _, matrices = common_refinement(*functions)
    return [[v for row in m for v in row] for m in matrices]


# --------------------------------------------------------------------------
# partition approximation


def lemma6_dominator(t: TensorElement):
    """``(g, h) = (sum |g_i|, sum |h_i|)``; then ``|flatten(t)| <= g (x) h``."""
    if not t.terms:
        return StepFunction1D(), StepFunction1D()
    g = abs(t.terms[0][0])
    h = abs(t.terms[0][1])
    for gi, hi in t.terms[1:]:
        g = g + abs(gi)
        h = h + abs(hi)
    return g, h


@dataclass(frozen=True)
class CellPartition:
    """The nonempty bracket cells of one factor at level ``n``.

    ``indices[c]`` is the bracket vector ``(a_1, ..., a_k)`` of cell ``c`` and
    ``indicators[c]`` its indicator function.  Together the cells partition
    the set where the dominator ``g`` is positive.
    """

    level: int
    indices: tuple[tuple[int, ...], ...]
    indicators: tuple[object, ...]
    weighted: tuple[object, ...]  # g * 1_A for each cell

    def __len__(self):
        return len(self.indices)

    def is_partition_of(self, dominator) -> bool:
        """Cells are 0/1-valued, pairwise disjoint and cover ``{dominator > 0}``."""
        target = dominator.support_indicator()
        if not self.indicators:
            return target == dominator.zero()
        total = self.indicators[0].zero()
        for ind in self.indicators:
            if any(v not in (ZERO, ONE) for v in ind.values):
                return False
            total = total + ind
        # 0/1 indicators summing to a 0/1 function cannot overlap
        return total == target


def _partition(elements: Sequence, n: int) -> tuple[object, CellPartition]:
    columns, rebuild = _factor_table(elements)
    ncells = len(columns[0]) if columns else 0
    dom = [sum((abs(col[j]) for col in columns), ZERO) for j in range(ncells)]
    groups: dict[tuple[int, ...], list[int]] = {}
    for j in range(ncells):
        gj = dom[j]
        if gj > 0:
            # a_i is the unique integer with a_i/n * g <= g_i < (a_i+1)/n * g
            key = tuple(math.floor(n * col[j] / gj) for col in columns)
            groups.setdefault(key, []).append(j)
    indices, indicators, weighted = [], [], []
    for key in sorted(groups):
        members = set(groups[key])
        indices.append(key)
        indicators.append(rebuild([ONE if j in members else ZERO for j in range(ncells)]))
        weighted.append(rebuild([dom[j] if j in members else ZERO for j in range(ncells)]))
    return rebuild(dom), CellPartition(n, tuple(indices), tuple(indicators), tuple(weighted))


@dataclass(frozen=True)
class Lemma6Approximation:
    source: TensorElement
    level: int
    g: object
    h: object
    f_n: TensorElement
    abs_f_n: TensorElement
    x_cells: CellPartition
    y_cells: CellPartition

    @property
    def k(self) -> int:
        return self.source.k

    @property
    def certificate(self) -> tuple[CellPartition, CellPartition]:
        return self.x_cells, self.y_cells

    def envelope(self):
        """``flatten(g (x) h)``."""
        return flatten(TensorElement.simple(self.g, self.h)) if self.source.terms else GridFunction()

    def check_bounds(self) -> "Lemma6Bounds":
        return check_lemma6_bounds(self)


@dataclass(frozen=True)
class Lemma6Bounds:
    level: int
    k: int
    dominated: bool        # |f| <= g (x) h
    member_bound: bool     # |f_n| <= k g (x) h
    error_bound: bool      # ||f| - |f_n|| <= (2k/n) g (x) h
    abs_matches: bool      # abs_f_n equals |f_n| cellwise
    partitions: bool       # both cell families partition {g > 0}, {h > 0}
    achieved: Fraction     # max ||f| - |f_n|| / (g (x) h) over cells with g (x) h > 0
    allowed: Fraction      # 2k/n

    @property
    def passed(self) -> bool:
        return all((self.dominated, self.member_bound, self.error_bound, self.abs_matches, self.partitions))

    def as_record(self) -> dict:
        return {
            "level": self.level,
            "k": self.k,
            "achieved": format_rational(self.achieved),
            "allowed": format_rational(self.allowed),
            "dominated": self.dominated,
            "member_bound": self.member_bound,
            "error_bound": self.error_bound,
            "abs_matches": self.abs_matches,
            "partitions": self.partitions,
        }


def lemma6_approximation(t: TensorElement, n: int) -> Lemma6Approximation:
    """Level-``n`` bracket approximation of ``t`` and of ``|t|``.

    Only bracket vectors that actually occur are enumerated; the remaining
    index combinations of ``{-n..n}^k`` have empty cells and contribute
    nothing.  Coefficients ``(a.b)/n^2`` are put on the x factor.
    """
    if not isinstance(n, int) or n < 1:
        raise InvalidLevelError(f"level must be a positive integer, got {n!r}")
    if not t.terms:
        empty = CellPartition(n, (), (), ())
        z = StepFunction1D()
        return Lemma6Approximation(t, n, z, z, TensorElement(), TensorElement(), empty, empty)
    g, x_cells = _partition([gi for gi, _ in t.terms], n)
    h, y_cells = _partition([hi for _, hi in t.terms], n)
    n2 = n * n
    terms, abs_terms = [], []
    for a_vec, gA in zip(x_cells.indices, x_cells.weighted):
        for b_vec, hB in zip(y_cells.indices, y_cells.weighted):
            coef = Fraction(sum(a * b for a, b in zip(a_vec, b_vec)), n2)
            if coef != 0:
                terms.append((gA.scale(coef), hB))
                abs_terms.append((gA.scale(abs(coef)), hB))
    return Lemma6Approximation(
        t, n, g, h, TensorElement(tuple(terms)), TensorElement(tuple(abs_terms)), x_cells, y_cells
    )


def check_lemma6_bounds(approx: Lemma6Approximation) -> Lemma6Bounds:
    """Verify all guarantees of the approximation as exact cellwise inequalities."""
    k, n = approx.k, approx.level
    allowed = Fraction(2 * k, n)
    F = flatten(approx.source)
    G = approx.envelope()
    Fn = flatten(approx.f_n)
    An = flatten(approx.abs_f_n)
    if approx.source.kind == "finite":
        # empty tensors of finite factors still flatten to a finite grid
        Fn = Fn if isinstance(Fn, FiniteGrid) else F.zero()
        An = An if isinstance(An, FiniteGrid) else F.zero()
    f_vals, g_vals, fn_vals, an_vals = aligned_values(abs(F), G, Fn, An)
    dominated = all(a <= b for a, b in zip(f_vals, g_vals))
    member_bound = all(abs(a) <= k * b for a, b in zip(fn_vals, g_vals))
    errors = [abs(a - b) for a, b in zip(f_vals, an_vals)]
    error_bound = all(e <= allowed * b for e, b in zip(errors, g_vals))
    abs_matches = all(abs(a) == b for a, b in zip(fn_vals, an_vals))
    achieved = max((e / b for e, b in zip(errors, g_vals) if b > 0), default=ZERO)
    partitions = approx.x_cells.is_partition_of(approx.g) and approx.y_cells.is_partition_of(approx.h)
    return Lemma6Bounds(n, k, dominated, member_bound, error_bound, abs_matches, partitions, achieved, allowed)


def indicator_identity(elements: Sequence, n: int, a_vec: Sequence[int]):
    """``g * 1_A`` for bracket vector ``a_vec``, via the product of indicators.

    Uses ``1_A = prod_i (1_{U(((a_i+1) g - n g_i)^+)} - 1_{U((a_i g - n g_i)^+)})``
    with ``g = sum |g_i|``, expanded over all ``2^k`` sign patterns; each
    product of support indicators is applied to ``g`` as a chain of
    support restrictions.
    """
    g = abs(elements[0])
    for e in elements[1:]:
        g = g + abs(e)

    def pos(u):
        return (u + abs(u)).scale(HALF)

    upper = [pos(g.scale(a + 1) - e.scale(n)) for a, e in zip(a_vec, elements)]
    lower = [pos(g.scale(a) - e.scale(n)) for a, e in zip(a_vec, elements)]
    total = g.zero()
    for pattern in itertools.product((0, 1), repeat=len(elements)):
        current = g
        for i, pick in enumerate(pattern):
            current = current.restrict_to_support(lower[i] if pick else upper[i])
        total = total - current if sum(pattern) % 2 else total + current
    return total


def riesz_closure_corpus(ts: Sequence[TensorElement], depth: int, budget: int) -> list:
    """Sample ``R(S (x) T)`` by closing flattened tensors under the lattice ops."""
    return closure_corpus([flatten(t) for t in ts], depth, budget)
