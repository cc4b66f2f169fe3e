"""Command line scenario runner.

::

    daniell run SCENARIO [--out PATH] [--suite NAME ...] [--seed N]
                [--tolerance p/q] [--max-steps N]
    daniell generate KIND [--seed N] [--size N] [--out PATH]

Exit status: 0 when every check passes, 1 when any check fails, 2 on a
configuration error.  ``--out`` receives one JSON record per line, sorted by
``(suite, case_id)``.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

import gmpy2

from . import closure, finite, product, riesz, step, tensor
from .errors import DaniellError, ScenarioError
from .rational import format_rational, parse_rational
from .sampling import random_step
from .scenario import KINDS, SUITES, Scenario, dumps, generate, load_scenario


@dataclass
class Record:
    suite: str
    case_id: str
    contract: str
    value: str
    passed: bool
    detail: dict
    elapsed_ms: float = 0.0

    def as_json(self) -> dict:
        return {
            "suite": self.suite,
            "case_id": self.case_id,
            "contract": self.contract,
            "value": self.value,
            "pass": self.passed,
            "detail": self.detail,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


def _timed(suite: str, case_id: str, contract: str, fn: Callable[[], tuple[str, bool, dict]]) -> Record:
    start = time.perf_counter()
    try:
        value, passed, detail = fn()
    except DaniellError as exc:
        value, passed, detail = "error", False, {"error": type(exc).__name__, "message": str(exc)}
    return Record(suite, case_id, contract, value, passed, detail, (time.perf_counter() - start) * 1e3)


# --------------------------------------------------------------------------
# suites


def _axiom_suite(sc: Scenario) -> Iterator[Record]:
    p = sc.parameters
    for name, space in sc.spaces.items():
        rng = random.Random(f"{sc.seed}:axioms:{name}")
        if space.kind == "finite":
            size = space.size

            def sampler():
                while True:
                    yield finite.FiniteFunction(Fraction(rng.randint(-2, 2), rng.randint(1, 2)) for _ in range(size))

            chains = [lambda n, size=size: finite.FiniteFunction.constant(size, Fraction(1, n))]
        else:
            def sampler():
                while True:
                    yield random_step(rng)

            chains = [
                lambda n: step.StepFunction1D.indicator(0, Fraction(1, n)),
                lambda n: step.StepFunction1D.indicator(-1, 1, Fraction(1, n)),
            ]
        report = riesz.check_integral_axioms(sampler(), space.integral, chains, p.trials)
        for axiom, check in report.checks.items():
            expected_fail = axiom in space.expect_fail
            contract = f"harness rejects ({axiom}) {check.title}" if expected_fail else f"({axiom}) {check.title}"
            yield Record(
                "axioms", f"{name}:{axiom}", contract,
                f"{check.checked} checks", check.passed != expected_fail,
                {"axiom_passed": check.passed, "detail": check.detail},
            )


def _product_suite(sc: Scenario) -> Iterator[Record]:
    for name, case in sc.tensors.items():
        J, K = case.x.integral, case.y.integral
        for i, (g, h) in enumerate(case.tensor.terms):
            def run(g=g, h=h):
                r = product.theorem1_residual(J, K, g, h)
                return format_rational(r), r == 0, {"J(f)": format_rational(J(g)), "K(g)": format_rational(K(h))}

            yield _timed("product", f"{name}:term{i}", "I(f(x)g) - J(f)K(g) = 0", run)

        def run_linear():
            t = case.tensor
            total = product.product_integral(J, K, tensor.flatten(t)) if t.terms else Fraction(0)
            parts = sum((J(g) * K(h) for g, h in t.terms), Fraction(0))
            return format_rational(total - parts), total == parts, {"I(f)": format_rational(total)}

        yield _timed("product", f"{name}:linear", "I(sum g_i(x)h_i) - sum J(g_i)K(h_i) = 0", run_linear)


def _fubini_suite(sc: Scenario) -> Iterator[Record]:
    p = sc.parameters
    groups: dict[tuple[str, str], list] = {}
    for case in sc.tensors.values():
        if case.tensor.terms:
            groups.setdefault((case.x.name, case.y.name), []).append(case)
    for (xs, ys), cases in sorted(groups.items()):
        J, K = sc.spaces[xs].integral, sc.spaces[ys].integral
        corpus = tensor.riesz_closure_corpus([c.tensor for c in cases], p.corpus_depth, p.corpus_budget)
        for i, f in enumerate(corpus):
            def run(f=f):
                a = product.iterated_integral(J, K, f, "xy")
                b = product.iterated_integral(J, K, f, "yx")
                c = product.cellwise_integral(J, K, f)
                return format_rational(a - b), a == b == c, {"J(Kf)": format_rational(a), "cellwise": format_rational(c)}

            yield _timed("fubini", f"{xs}x{ys}:corpus{i:04d}", "J(Kf) - K(Jf) = 0", run)


def _lemma6_suite(sc: Scenario) -> Iterator[Record]:
    for name, case in sc.tensors.items():
        for n in sc.parameters.levels:
            def run(n=n):
                bounds = tensor.lemma6_approximation(case.tensor, n).check_bounds()
                value = f"{format_rational(bounds.achieved)} <= {format_rational(bounds.allowed)}"
                return value, bounds.passed, bounds.as_record()

            yield _timed("lemma6", f"{name}:n{n:03d}", "||f| - |f_n|| <= (2k/n) g(x)h, |f_n| <= k g(x)h", run)

        if case.tensor.k and case.tensor.k <= 2:
            def run_identity():
                t = case.tensor
                n = max(sc.parameters.levels)
                approx = tensor.lemma6_approximation(t, n)
                ok = True
                for side, cells, elements in (
                    ("x", approx.x_cells, [g for g, _ in t.terms]),
                    ("y", approx.y_cells, [h for _, h in t.terms]),
                ):
                    for idx, direct in zip(cells.indices, cells.weighted):
                        ok &= tensor.indicator_identity(elements, n, idx) == direct
                return f"{len(approx.x_cells) + len(approx.y_cells)} cells", ok, {"level": n}

            yield _timed("lemma6", f"{name}:identity", "product of indicators reproduces every cell", run_identity)


def _lemma1_suite(sc: Scenario) -> Iterator[Record]:
    for case in sc.lemma1:
        f, g, I = case["f"], case["g"], case["space"].integral

        def run(f=f, g=g, I=I):
            target = step.closed_form(f, g)
            cert = closure.lemma1_certificate(f, g)
            ext = closure.extended_integral(I, cert)
            detail = {"closed_form_integral": format_rational(I(target)), "extended": format_rational(ext.value)}
            ok = ext.exact and ext.value == I(target)
            if all(v >= 0 for v in f.values):
                n_star = step.stationarity_index(f, g)
                detail["stationarity_index"] = n_star
                ok &= step.lemma1_sequence(f, g, n_star) == target
            return format_rational(ext.value - I(target)), ok, detail

        yield _timed("lemma1", case["id"], "inf(f, n|g|) reaches f 1_U(g); extended integral exact", run)


def _closure_suite(sc: Scenario) -> Iterator[Record]:
    p = sc.parameters
    for name, case in sc.tensors.items():
        if not case.tensor.terms:
            continue
        J, K = case.x.integral, case.y.integral
        I = product.ProductIntegral(J, K)

        def run(case=case, I=I):
            exact = I(abs(tensor.flatten(case.tensor)))
            cert = closure.lemma6_abs_certificate(case.tensor)
            approx = closure.extended_integral(I, cert, p.tolerance, p.max_steps)
            err = abs(approx.value - exact)
            detail = {"exact": format_rational(exact), "certified": format_rational(approx.value),
                      "gap": format_rational(approx.gap), "depth": closure.chain_depth(cert)}
            return format_rational(err), err <= p.tolerance, detail

        yield _timed("closure", f"{name}:abs", "|Ibar(|f|) - I(|f|)| <= tolerance", run)

    for case in sc.memberships:
        def run_membership(case=case):
            witness = finite.p_closure_membership(case["basis"], case["f"])
            found = witness is not None
            ok = (not found) or witness.verify(case["basis"], case["f"])
            if case["expect"] is not None:
                ok &= found == case["expect"]
            detail = {"member": found}
            if found:
                detail["dominator"] = [format_rational(v) for v in witness.dominator(case["basis"]).values]
            return str(found).lower(), ok, detail

        yield _timed("closure", f"membership:{case['id']}", "f in P(span M) decided with a checkable witness", run_membership)


def _sqrt_suite(sc: Scenario) -> Iterator[Record]:
    p = sc.parameters
    grid = [Fraction(i, p.sqrt_grid) for i in range(p.sqrt_grid + 1)]

    def run_monotone():
        failures = 0
        for t in grid:
            values = closure.sqrt_iterates(t, p.sqrt_max_n + 1)
            tq = gmpy2.mpq(t.numerator, t.denominator)
            for n in range(p.sqrt_max_n):
                a, b = values[n], values[n + 1]
                if not (0 <= a <= b and a * a <= tq):
                    failures += 1
        return f"{failures} violations", failures == 0, {"max_n": p.sqrt_max_n, "grid": p.sqrt_grid}

    yield _timed("sqrt", "monotone", "0 <= p_n(t) <= p_{n+1}(t), p_n(t)^2 <= t", run_monotone)

    def run_envelope():
        worst = gmpy2.mpq(0)
        for t in grid:
            value = closure.sqrt_iterates(t * t, p.sqrt_max_n)[-1]
            worst = max(worst, abs(value - gmpy2.mpq(t.numerator, t.denominator)))
        # the exact deviation has ~10^5 digits; report a certified upper bound
        scale = 10**12
        bound = Fraction(int(-((-worst.numerator * scale) // worst.denominator)), scale)
        envelope = p.sqrt_envelope
        ok = worst <= gmpy2.mpq(envelope.numerator, envelope.denominator)
        return f"{float(bound):.6f}", ok, {
            "max_deviation_upper": format_rational(bound), "envelope": format_rational(envelope)}

    yield _timed("sqrt", "envelope", f"|p_{p.sqrt_max_n}(t^2) - |t|| <= envelope", run_envelope)

    for case in sc.abs_cases:
        def run_abs(case=case):
            f = case["f"]
            cert = closure.abs_certificate(f, case["bound"])
            if isinstance(f, finite.FiniteFunction):
                points = range(len(f))
            else:
                points = f.breakpoints[:-1]
            worst = Fraction(0)
            for z in points:
                approx = closure.evaluate(cert, z, p.tolerance, p.max_steps)
                worst = max(worst, abs(approx.value - abs(f.at(z))))
            return format_rational(worst), worst <= p.tolerance, {"depth": closure.chain_depth(cert)}

        yield _timed("sqrt", f"abs:{case['id']}", "lim lam p_n(f^2/lam^2) = |f| within tolerance", run_abs)


SUITE_RUNNERS = {
    "axioms": _axiom_suite,
    "product": _product_suite,
    "fubini": _fubini_suite,
    "lemma6": _lemma6_suite,
    "lemma1": _lemma1_suite,
    "closure": _closure_suite,
    "sqrt": _sqrt_suite,
}


def run_scenario(sc: Scenario) -> list[Record]:
    records: list[Record] = []
    for suite in sc.suites:
        records.extend(SUITE_RUNNERS[suite](sc))
    records.sort(key=lambda r: (r.suite, r.case_id))
    return records


def format_table(records: list[Record]) -> str:
    if not records:
        return "no checks requested\n"
    rows = [("suite", "case", "contract", "value", "status")]
    rows += [(r.suite, r.case_id, r.contract, r.value, "pass" if r.passed else "FAIL") for r in records]
    widths = [min(max(len(row[i]) for row in rows), 60) for i in range(5)]
    lines = ["  ".join(cell[:60].ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    passed = sum(r.passed for r in records)
    lines.append(f"{passed}/{len(records)} checks passed")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# argument handling


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="daniell", description="Run exact product-integral verification scenarios.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="execute the suites of a scenario file")
    run.add_argument("scenario")
    run.add_argument("--out", help="write line-delimited JSON records here")
    run.add_argument("--suite", action="extend", nargs="+", choices=SUITES, metavar="NAME",
                     help="run only these suites")
    run.add_argument("--seed", type=int)
    run.add_argument("--tolerance", type=_rational_arg, help="exact rational p/q")
    run.add_argument("--max-steps", type=int)

    gen = sub.add_parser("generate", help="emit a scenario file")
    gen.add_argument("kind", help=f"one of {', '.join(KINDS)}")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--size", type=int, default=3)
    gen.add_argument("--out")
    return parser


def _cmd_run(args) -> int:
    try:
        sc = load_scenario(args.scenario)
        if args.suite:
            sc.suites = list(dict.fromkeys(args.suite))
        if args.seed is not None:
            sc.seed = args.seed
        if args.tolerance is not None:
            if args.tolerance <= 0:
                raise ScenarioError("--tolerance: must be positive")
            sc.parameters.tolerance = args.tolerance
        if args.max_steps is not None:
            if args.max_steps < 2:
                raise ScenarioError("--max-steps: must be at least 2")
            sc.parameters.max_steps = args.max_steps
    except ScenarioError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    records = run_scenario(sc)
    sys.stdout.write(format_table(records))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            for r in records:
                fh.write(json.dumps(r.as_json(), sort_keys=True) + "\n")
    return 0 if all(r.passed for r in records) else 1


def _cmd_generate(args) -> int:
    if args.size < 0:
        print("configuration error: --size must be nonnegative", file=sys.stderr)
        return 2
    try:
        text = dumps(generate(args.kind, args.seed, args.size))
    except ScenarioError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    return _cmd_generate(args)


if __name__ == "__main__":
    sys.exit(main())
