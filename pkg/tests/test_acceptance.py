"""Acceptance criteria, one test per criterion.

Each test prints a single ``AC<n> PASS|FAIL`` line with its headline numbers.
Run alone with ``pytest tests/test_acceptance.py -v`` (or ``python
tests/test_acceptance.py``).
"""
import itertools
import math
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from daniell import (
    ElementaryIntegral1D,
    FiniteFunction,
    ProductIntegral,
    StepFunction1D,
    SubspaceBasis,
    WeightedIntegral,
    cellwise_integral,
    check_integral_axioms,
    closed_form,
    extended_integral,
    flatten,
    indicator_identity,
    iterated_integral,
    lemma1_certificate,
    lemma1_sequence,
    lemma6_abs_certificate,
    lemma6_approximation,
    p_closure_membership,
    riesz_closure_corpus,
    sqrt_iterates,
    stationarity_index,
    theorem1_residual,
)
from daniell.errors import ConvergenceFailure
from daniell.sampling import finite_sampler, random_stieltjes, random_step, random_tensor, step_sampler
from daniell.tensor import _partition

F = Fraction
LEB = ElementaryIntegral1D.lebesgue()
LEVELS = (1, 2, 4, 8, 16, 32, 64)


@pytest.fixture
def emit(capsys):
    def _emit(tag, ok, detail, started):
        with capsys.disabled():
            print(f"\n{tag} {'PASS' if ok else 'FAIL'}  {detail}  [{time.perf_counter() - started:.2f}s]")
    return _emit


def test_ac1_product_of_simple_tensors(emit):
    started = time.perf_counter()
    rng = random.Random(1001)
    bad = 0
    for _ in range(1000):
        f, g = random_step(rng), random_step(rng)
        J, K = random_stieltjes(rng), random_stieltjes(rng)
        bad += theorem1_residual(LEB, LEB, f, g) != 0
        bad += theorem1_residual(J, K, f, g) != 0
    vectors = [FiniteFunction(v) for v in itertools.product((-1, 0, 1), repeat=2)]
    weights = [WeightedIntegral(w) for w in ((1, 1), (2, 3), (F(1, 2), 0))]
    finite_cases = 0
    for f, g in itertools.product(vectors, repeat=2):
        for J, K in itertools.product(weights, repeat=2):
            bad += theorem1_residual(J, K, f, g) != 0
            finite_cases += 1
    emit("AC1", bad == 0, f"2000 step residuals + {finite_cases} finite residuals, nonzero={bad}", started)
    assert bad == 0


def test_ac2_fubini_on_closure_corpus(emit):
    started = time.perf_counter()
    rng = random.Random(2002)
    generators = [random_tensor(rng, rng.randint(1, 2), max_plateaus=3) for _ in range(6)]
    corpus = riesz_closure_corpus(generators, 3, 500)
    J = ElementaryIntegral1D.stieltjes((0, 1, 3), (2, F(1, 2)))
    disagree = 0
    for f in corpus:
        a = iterated_integral(LEB, J, f, "xy")
        b = iterated_integral(LEB, J, f, "yx")
        disagree += not (a == b == cellwise_integral(LEB, J, f))
    ok = disagree == 0 and len(corpus) == 500
    emit("AC2", ok, f"corpus={len(corpus)} depth<=3, order disagreements={disagree}", started)
    assert ok


def test_ac3_lemma6_bounds(emit):
    started = time.perf_counter()
    rng = random.Random(3003)
    failures, identity_checks, worst = 0, 0, F(0)
    for i in range(200):
        k = 1 + i % 3
        t = random_tensor(rng, k, max_plateaus=4)
        for n in LEVELS:
            bounds = lemma6_approximation(t, n).check_bounds()
            failures += not bounds.passed
            worst = max(worst, bounds.achieved / bounds.allowed)
            if k <= 2:
                for side in (0, 1):
                    elements = [term[side] for term in t.terms]
                    _, cells = _partition(elements, n)
                    for idx, direct in zip(cells.indices, cells.weighted):
                        failures += indicator_identity(elements, n, idx) != direct
                        identity_checks += 1
    emit("AC3", failures == 0,
         f"1400 (tensor, level) bound checks, {identity_checks} identity cells, "
         f"max achieved/allowed={float(worst):.4f}, failures={failures}", started)
    assert failures == 0


def test_ac4_extension_matches_grid_integral(emit):
    started = time.perf_counter()
    rng = random.Random(4004)
    tol = F(1, 10**6)
    worst, failures = F(0), 0
    for i in range(50):
        t = random_tensor(rng, 1 + i % 3, max_plateaus=4)
        I = ProductIntegral(LEB, random_stieltjes(rng))
        try:
            approx = extended_integral(I, lemma6_abs_certificate(t), tol)
        except ConvergenceFailure:
            failures += 1
            continue
        worst = max(worst, abs(approx.value - I(abs(flatten(t)))))
    ok = failures == 0 and worst <= tol
    emit("AC4", ok, f"50 tensors, max |ext - exact|={float(worst):.3e}, convergence failures={failures}", started)
    assert ok


def test_ac5_lemma1_closed_form(emit):
    started = time.perf_counter()
    rng = random.Random(5005)
    bad = 0
    for _ in range(200):
        f, g = abs(random_step(rng)), random_step(rng)
        target = closed_form(f, g)
        bad += lemma1_sequence(f, g, stationarity_index(f, g)) != target
        approx = extended_integral(LEB, lemma1_certificate(f, g))
        bad += not (approx.exact and approx.value == LEB(target))
    emit("AC5", bad == 0, f"200 pairs, mismatches={bad}", started)
    assert bad == 0


def test_ac6_sqrt_polynomials(emit):
    started = time.perf_counter()
    grid = [F(i, 16) for i in range(17)]
    violations = 0
    worst = 0.0
    for t in grid:
        values = sqrt_iterates(t, 21)
        tq = values[0].__class__(t.numerator, t.denominator)
        violations += sum(not (0 <= a <= b and a * a <= tq) for a, b in zip(values, values[1:]))
        p20 = sqrt_iterates(t * t, 20)[-1]
        worst = max(worst, float(abs(p20 - tq)))
    ok = violations == 0 and worst <= 0.2
    emit("AC6", ok, f"monotone violations={violations}, max |p_20(t^2)-|t||={worst:.6f} (envelope 0.2)", started)
    assert ok


def test_ac7_axiom_harness(emit):
    started = time.perf_counter()
    chains_step = [
        lambda n: StepFunction1D.indicator(0, F(1, n)),
        lambda n: StepFunction1D.indicator(-1, 1, F(1, n)),
    ]
    chains_finite = [lambda n: FiniteFunction([F(1, n), F(1, n)])]
    reports = {
        "lebesgue": check_integral_axioms(step_sampler(random.Random(7)), LEB, chains_step),
        "stieltjes": check_integral_axioms(step_sampler(random.Random(8)),
                                           ElementaryIntegral1D.stieltjes((0, 1, 3), (2, F(1, 2))), chains_step),
        "weights(1,2)": check_integral_axioms(finite_sampler(random.Random(9), 2), WeightedIntegral((1, 2)),
                                              chains_finite),
    }
    signed = check_integral_axioms(finite_sampler(random.Random(10), 2),
                                   WeightedIntegral((1, -1), signed=True), chains_finite)
    ok = all(r.passed for r in reports.values()) and not signed["iii"].passed
    summary = ", ".join(f"{name}={'ok' if r.passed else r.failed()}" for name, r in reports.items())
    emit("AC7", ok, f"{summary}, signed fixture fails {signed.failed()}", started)
    assert ok


# --------------------------------------------------------------------------
# exhaustive dominator oracle for AC8

# With basis entries and |f| in {-2..2}, every vertex of {c : Bc >= |f|}
# and every coordinate vector of f solves a system with determinant at most 8
# and numerators at most 8 (Cramer).  The polyhedron is pointed because B has
# full column rank, so searching this grid misses no feasible case.
SCALE = 840  # lcm(1..8)
GRID = sorted({F(p, q) for q in range(1, 9) for p in range(-8 * q, 8 * q + 1)})
GRID_INT = np.array([int(c * SCALE) for c in GRID], dtype=np.int64)


def _primitive(v):
    g = 0
    for x in v:
        g = math.gcd(g, x)
    v = tuple(x // g for x in v)
    return v if next(x for x in v if x) > 0 else tuple(-x for x in v)


def _cross(v, w):
    return (v[1] * w[2] - v[2] * w[1], v[2] * w[0] - v[0] * w[2], v[0] * w[1] - v[1] * w[0])


def _parallel(v, w):
    if len(v) == 2:
        return v[0] * w[1] - v[1] * w[0] == 0
    return not any(_cross(v, w))


def _span_key(basis):
    if len(basis) == 1:
        return ("line", _primitive(basis[0]))
    if len(basis[0]) == 2:
        return ("plane",)
    return ("plane", _primitive(_cross(*basis)))


def _in_span(basis, f):
    """Exact integer test, independent of the library's elimination."""
    if len(basis) == 1:
        return _parallel(basis[0], f)
    if len(f) == 2:
        return True
    normal = _cross(*basis)
    return sum(a * b for a, b in zip(normal, f)) == 0


def _grid_images(basis):
    """``B c`` (scaled by SCALE) for every coefficient vector on the grid."""
    if len(basis) == 1:
        return GRID_INT[:, None] * np.array(basis[0], dtype=np.int64)[None, :]
    c1, c2 = np.meshgrid(GRID_INT, GRID_INT, indexing="ij")
    b1, b2 = (np.array(b, dtype=np.int64) for b in basis)
    return (c1.reshape(-1, 1) * b1 + c2.reshape(-1, 1) * b2)


def _subspaces(d):
    """One basis per distinct span of one or two independent vectors in {-2..2}^d."""
    vectors = [v for v in itertools.product(range(-2, 3), repeat=d) if any(v)]
    seen = {}
    for v in vectors:
        seen.setdefault(_span_key([v]), (v,))
    for v, w in itertools.combinations(vectors, 2):
        if not _parallel(v, w):
            seen.setdefault(_span_key([v, w]), (v, w))
    return list(seen.values())


def test_ac8_p_closure_oracle(emit):
    started = time.perf_counter()
    checked = members = disagreements = 0
    for d in (2, 3):
        for basis in _subspaces(d):
            m = SubspaceBasis(tuple(FiniteFunction(b) for b in basis))
            images = None
            for f in itertools.product(range(-2, 3), repeat=d):
                in_span = _in_span(basis, f)
                expected = False
                if in_span:
                    if images is None:
                        images = _grid_images(basis)
                    need = np.abs(np.array(f, dtype=np.int64)) * SCALE
                    expected = bool(np.any(np.all(images >= need, axis=1)))
                witness = p_closure_membership(m, FiniteFunction(f))
                got = witness is not None
                if got and not witness.verify(m, FiniteFunction(f)):
                    got = None
                disagreements += got != expected
                members += expected
                checked += 1
    emit("AC8", disagreements == 0,
         f"{checked} (subspace, f) pairs, {members} members, disagreements={disagreements}", started)
    assert disagreements == 0


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
