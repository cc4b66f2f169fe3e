"""Scenario files: parsing, validation and deterministic generation.

A scenario is a JSON document.  Every rational is an exact ``"p/q"`` string
(plain JSON integers are tolerated; JSON floats and decimal strings are
rejected).  Top-level keys::

    seed          integer
    parameters    levels, tolerance, trials, max_steps, corpus_depth,
                  corpus_budget, sqrt_max_n, sqrt_grid, sqrt_envelope
    spaces        name -> {"kind": "lebesgue"}
                        | {"kind": "stieltjes", "breakpoints": [...], "slopes": [...]}
                        | {"kind": "finite", "weights": [...], "signed": bool}
                  optional "expect_fail": list of axiom names the harness must reject
    tensors       name -> {"x": space, "y": space, "terms": [[element, element], ...]}
    lemma1        [{"id", "f": step, "g": step, "integral": space}]
    memberships   [{"id", "basis": [[...], ...], "f": [...], "expect": bool (optional)}]
    abs_cases     [{"id", "f": element, "bound": rational}]
    suites        subset of SUITES

Elements are ``{"kind": "step", "breakpoints": [...], "values": [...]}`` or
``{"kind": "finite", "values": [...]}``.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .errors import MalformedInputError, ScenarioError
from .finite import FiniteFunction, SubspaceBasis, WeightedIntegral
from .rational import as_fraction, format_rational
from .riesz import AXIOMS
from .sampling import random_rational, random_step, random_tensor
from .step import ElementaryIntegral1D, StepFunction1D
from .tensor import TensorElement

SUITES = ("axioms", "product", "fubini", "lemma6", "lemma1", "closure", "sqrt")
KINDS = ("random-steps", "random-finite", "paper-demos")

DEFAULT_PARAMETERS = {
    "levels": [1, 2, 4, 8, 16, 32, 64],
    "tolerance": "1/1000000",
    "trials": 25,
    "max_steps": 200,
    "corpus_depth": 2,
    "corpus_budget": 30,
    "sqrt_max_n": 20,
    "sqrt_grid": 16,
    "sqrt_envelope": "1/5",
}


@dataclass
class Parameters:
    levels: list[int]
    tolerance: Fraction
    trials: int
    max_steps: int
    corpus_depth: int
    corpus_budget: int
    sqrt_max_n: int
    sqrt_grid: int
    sqrt_envelope: Fraction


@dataclass
class Space:
    name: str
    integral: Any
    kind: str
    size: int = 0
    expect_fail: tuple[str, ...] = ()


@dataclass
class TensorCase:
    name: str
    x: Space
    y: Space
    tensor: TensorElement


@dataclass
class Scenario:
    seed: int
    parameters: Parameters
    spaces: dict[str, Space] = field(default_factory=dict)
    tensors: dict[str, TensorCase] = field(default_factory=dict)
    lemma1: list[dict] = field(default_factory=list)
    memberships: list[dict] = field(default_factory=list)
    abs_cases: list[dict] = field(default_factory=list)
    suites: list[str] = field(default_factory=list)


# --------------------------------------------------------------------------
# parsing


def _rational(value, where: str) -> Fraction:
    if isinstance(value, float):
        raise ScenarioError(f"{where}: decimal literal {value!r} rejected, write 'p/q'")
    try:
        return as_fraction(value)
    except ValueError as exc:
        raise ScenarioError(f"{where}: {exc}") from None


def _rationals(values, where: str) -> list[Fraction]:
    if not isinstance(values, list):
        raise ScenarioError(f"{where}: expected a list of rationals")
    return [_rational(v, f"{where}[{i}]") for i, v in enumerate(values)]


def _int(value, where: str, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ScenarioError(f"{where}: expected an integer >= {minimum}, got {value!r}")
    return value


def _require(data: dict, key: str, where: str):
    if not isinstance(data, dict):
        raise ScenarioError(f"{where}: expected an object")
    if key not in data:
        raise ScenarioError(f"{where}: missing field {key!r}")
    return data[key]


def parse_element(data, where: str):
    kind = _require(data, "kind", where)
    try:
        if kind == "step":
            return StepFunction1D(
                tuple(_rationals(_require(data, "breakpoints", where), f"{where}.breakpoints")),
                tuple(_rationals(_require(data, "values", where), f"{where}.values")),
            )
        if kind == "finite":
            return FiniteFunction(_rationals(_require(data, "values", where), f"{where}.values"))
    except MalformedInputError as exc:
        raise ScenarioError(f"{where}: {exc}") from None
    raise ScenarioError(f"{where}.kind: unknown element kind {kind!r}")


def _parse_space(name: str, data, where: str) -> Space:
    kind = _require(data, "kind", where)
    expect_fail = data.get("expect_fail", [])
    if not isinstance(expect_fail, list) or any(a not in AXIOMS for a in expect_fail):
        raise ScenarioError(f"{where}.expect_fail: entries must be among {list(AXIOMS)}")
    try:
        if kind == "lebesgue":
            return Space(name, ElementaryIntegral1D(label=name), "step", expect_fail=tuple(expect_fail))
        if kind == "stieltjes":
            integral = ElementaryIntegral1D.stieltjes(
                _rationals(_require(data, "breakpoints", where), f"{where}.breakpoints"),
                _rationals(_require(data, "slopes", where), f"{where}.slopes"),
                label=name,
            )
            return Space(name, integral, "step", expect_fail=tuple(expect_fail))
        if kind == "finite":
            weights = _rationals(_require(data, "weights", where), f"{where}.weights")
            integral = WeightedIntegral(tuple(weights), signed=bool(data.get("signed", False)), label=name)
            return Space(name, integral, "finite", len(weights), tuple(expect_fail))
    except MalformedInputError as exc:
        raise ScenarioError(f"{where}: {exc}") from None
    raise ScenarioError(f"{where}.kind: unknown space kind {kind!r}")


def _space_ref(spaces: dict, name, where: str) -> Space:
    if name not in spaces:
        raise ScenarioError(f"{where}: unknown space {name!r}")
    return spaces[name]


def _check_element_in(space: Space, element, where: str) -> None:
    if space.kind == "finite":
        if not isinstance(element, FiniteFunction) or len(element) != space.size:
            raise ScenarioError(f"{where}: expected a finite element on {space.size} points")
    elif not isinstance(element, StepFunction1D):
        raise ScenarioError(f"{where}: expected a step function for space {space.name!r}")


def parse_scenario(data) -> Scenario:
    if not isinstance(data, dict):
        raise ScenarioError("scenario: top level must be an object")
    unknown = set(data) - {"seed", "parameters", "spaces", "tensors", "lemma1", "memberships",
                           "abs_cases", "suites", "description"}
    if unknown:
        raise ScenarioError(f"scenario: unknown top-level fields {sorted(unknown)}")

    raw = dict(DEFAULT_PARAMETERS)
    raw.update(data.get("parameters", {}))
    levels = raw["levels"]
    if not isinstance(levels, list) or not levels:
        raise ScenarioError("parameters.levels: expected a non-empty list")
    params = Parameters(
        levels=[_int(n, f"parameters.levels[{i}]", 1) for i, n in enumerate(levels)],
        tolerance=_rational(raw["tolerance"], "parameters.tolerance"),
        trials=_int(raw["trials"], "parameters.trials", 1),
        max_steps=_int(raw["max_steps"], "parameters.max_steps", 2),
        corpus_depth=_int(raw["corpus_depth"], "parameters.corpus_depth"),
        corpus_budget=_int(raw["corpus_budget"], "parameters.corpus_budget"),
        sqrt_max_n=_int(raw["sqrt_max_n"], "parameters.sqrt_max_n", 1),
        sqrt_grid=_int(raw["sqrt_grid"], "parameters.sqrt_grid", 1),
        sqrt_envelope=_rational(raw["sqrt_envelope"], "parameters.sqrt_envelope"),
    )
    if params.tolerance <= 0:
        raise ScenarioError("parameters.tolerance: must be positive")

    scenario = Scenario(seed=_int(data.get("seed", 0), "seed"), parameters=params)
    for name, entry in sorted(data.get("spaces", {}).items()):
        scenario.spaces[name] = _parse_space(name, entry, f"spaces.{name}")

    for name, entry in sorted(data.get("tensors", {}).items()):
        where = f"tensors.{name}"
        x = _space_ref(scenario.spaces, _require(entry, "x", where), f"{where}.x")
        y = _space_ref(scenario.spaces, _require(entry, "y", where), f"{where}.y")
        if x.kind != y.kind:
            raise ScenarioError(f"{where}: x and y spaces must both be finite or both be step spaces")
        terms = _require(entry, "terms", where)
        if not isinstance(terms, list):
            raise ScenarioError(f"{where}.terms: expected a list of [x, y] pairs")
        pairs = []
        for i, pair in enumerate(terms):
            if not isinstance(pair, list) or len(pair) != 2:
                raise ScenarioError(f"{where}.terms[{i}]: expected a pair")
            g = parse_element(pair[0], f"{where}.terms[{i}][0]")
            h = parse_element(pair[1], f"{where}.terms[{i}][1]")
            _check_element_in(x, g, f"{where}.terms[{i}][0]")
            _check_element_in(y, h, f"{where}.terms[{i}][1]")
            pairs.append((g, h))
        scenario.tensors[name] = TensorCase(name, x, y, TensorElement(tuple(pairs)))

    for i, case in enumerate(data.get("lemma1", [])):
        where = f"lemma1[{i}]"
        space = _space_ref(scenario.spaces, _require(case, "integral", where), f"{where}.integral")
        f = parse_element(_require(case, "f", where), f"{where}.f")
        g = parse_element(_require(case, "g", where), f"{where}.g")
        _check_element_in(space, f, f"{where}.f")
        _check_element_in(space, g, f"{where}.g")
        if space.kind != "step":
            raise ScenarioError(f"{where}.integral: lemma1 cases need a step-function space")
        scenario.lemma1.append({"id": str(case.get("id", i)), "f": f, "g": g, "space": space})

    for i, case in enumerate(data.get("memberships", [])):
        where = f"memberships[{i}]"
        basis_raw = _require(case, "basis", where)
        if not isinstance(basis_raw, list):
            raise ScenarioError(f"{where}.basis: expected a list of vectors")
        try:
            basis = SubspaceBasis(tuple(
                FiniteFunction(_rationals(v, f"{where}.basis[{j}]")) for j, v in enumerate(basis_raw)
            ))
            f = FiniteFunction(_rationals(_require(case, "f", where), f"{where}.f"))
        except MalformedInputError as exc:
            raise ScenarioError(f"{where}: {exc}") from None
        if f.domain_size != basis.domain_size:
            raise ScenarioError(f"{where}.f: domain size does not match the basis")
        expect = case.get("expect")
        if expect is not None and not isinstance(expect, bool):
            raise ScenarioError(f"{where}.expect: expected true or false")
        scenario.memberships.append({"id": str(case.get("id", i)), "basis": basis, "f": f, "expect": expect})

    for i, case in enumerate(data.get("abs_cases", [])):
        where = f"abs_cases[{i}]"
        f = parse_element(_require(case, "f", where), f"{where}.f")
        bound = _rational(_require(case, "bound", where), f"{where}.bound")
        scenario.abs_cases.append({"id": str(case.get("id", i)), "f": f, "bound": bound})

    suites = data.get("suites", [])
    if not isinstance(suites, list) or any(s not in SUITES for s in suites):
        raise ScenarioError(f"suites: entries must be among {list(SUITES)}")
    scenario.suites = list(dict.fromkeys(suites))
    return scenario


def load_scenario(path) -> Scenario:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ScenarioError(f"{path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return parse_scenario(data)


# --------------------------------------------------------------------------
# generation


def _r(q) -> str:
    return format_rational(q)


def _step(breaks, values) -> dict:
    return StepFunction1D(tuple(breaks), tuple(values)).to_json()


def _ind(a, b, v=1) -> dict:
    return _step((a, b), (v,))


def _finite(values) -> dict:
    return {"kind": "finite", "values": [_r(v) for v in values]}


def _paper_demos() -> dict:
    third = Fraction(1, 3)
    unit = _ind(0, 1)
    spaces = {
        "leb": {"kind": "lebesgue"},
        "mu": {"kind": "stieltjes", "breakpoints": ["0/1", "1/1", "3/1"], "slopes": ["2/1", "1/2"]},
        "w11": {"kind": "finite", "weights": ["1/1", "1/1"]},
        "w12": {"kind": "finite", "weights": ["1/1", "2/1"]},
        "w23": {"kind": "finite", "weights": ["2/1", "3/1"]},
        "signed": {"kind": "finite", "weights": ["1/1", "-1/1"], "signed": True, "expect_fail": ["iii", "iii_two_sided"]},
    }
    signed_x = _step((0, 1, 2), (1, -1))
    two_valued = _step((0, 1, 2), (third, 1))
    tensors = {
        "unit_square": {"x": "leb", "y": "leb", "terms": [[unit, unit]]},
        "strip_1x2": {"x": "leb", "y": "leb", "terms": [[unit, _ind(0, 2)]]},
        "cancellation": {"x": "leb", "y": "leb", "terms": [[signed_x, unit], [_step((0, 1, 2), (-1, 1)), unit]]},
        "three_cells": {"x": "leb", "y": "leb", "terms": [[_ind(0, 2), unit], [_ind(1, 3), unit]]},
        "signed_dominator": {"x": "leb", "y": "leb", "terms": [[signed_x, unit]]},
        "duplicate_terms": {"x": "leb", "y": "mu", "terms": [[signed_x, _ind(0, 2)], [signed_x, _ind(0, 2)]]},
        "third_square": {"x": "leb", "y": "leb", "terms": [[_ind(0, 1, third), unit]]},
        "two_valued": {"x": "leb", "y": "leb", "terms": [[two_valued, unit]]},
        "two_valued_k2": {"x": "leb", "y": "mu", "terms": [[two_valued, unit], [_step((0, 2), (-1,)), _ind(0, 2)]]},
        "finite_pair": {"x": "w11", "y": "w23", "terms": [[_finite((1, 2)), _finite((1, 1))]]},
        "finite_signed": {"x": "w12", "y": "w23", "terms": [[_finite((1, -1)), _finite((2, 1))],
                                                            [_finite((0, 1)), _finite((-1, 1))]]},
    }
    lemma1 = [
        {"id": "overlap", "f": _ind(0, 2), "g": _ind(1, 3), "integral": "leb"},
        {"id": "g_zero", "f": _ind(0, 2), "g": _step((), ()), "integral": "leb"},
        {"id": "slow", "f": _ind(0, 1, 2), "g": _ind(0, 1, third), "integral": "leb"},
        {"id": "signed_f", "f": signed_x, "g": _ind(1, 3), "integral": "mu"},
    ]
    memberships = [
        {"id": "self_dominated", "basis": [["1/1", "1/1"]], "f": ["1/1", "1/1"], "expect": True},
        {"id": "no_dominator", "basis": [["1/1", "-1/1"]], "f": ["1/1", "-1/1"], "expect": False},
        {"id": "outside_span", "basis": [["1/1", "1/1"]], "f": ["1/1", "-1/1"], "expect": False},
        {"id": "full_space", "basis": [["1/1", "0/1"], ["0/1", "1/1"]], "f": ["3/1", "-2/1"], "expect": True},
    ]
    abs_cases = [{"id": "pm_one", "f": _finite((1, -1)), "bound": "1/1"}]
    return {
        "description": "every worked example of the package documentation",
        "seed": 0,
        "parameters": dict(DEFAULT_PARAMETERS),
        "spaces": spaces,
        "tensors": tensors,
        "lemma1": lemma1,
        "memberships": memberships,
        "abs_cases": abs_cases,
        "suites": list(SUITES),
    }


def _random_steps(seed: int, size: int) -> dict:
    rng = random.Random(seed)
    slopes = [_r(abs(random_rational(rng, 4))) for _ in range(3)]
    spaces = {
        "leb": {"kind": "lebesgue"},
        "mu": {"kind": "stieltjes", "breakpoints": ["-8/1", "-1/1", "2/1", "8/1"], "slopes": slopes},
    }
    tensors = {}
    for i in range(size):
        t = random_tensor(rng, rng.randint(1, 3))
        tensors[f"t{i:03d}"] = {"x": "leb", "y": rng.choice(["leb", "mu"]), "terms": t.to_json()}
    lemma1 = []
    for i in range(size):
        lemma1.append({
            "id": f"p{i:03d}", "f": abs(random_step(rng)).to_json(), "g": random_step(rng).to_json(),
            "integral": rng.choice(["leb", "mu"]),
        })
    params = dict(DEFAULT_PARAMETERS)
    return {
        "seed": seed, "parameters": params, "spaces": spaces, "tensors": tensors,
        "lemma1": lemma1, "suites": ["axioms", "product", "fubini", "lemma6", "lemma1", "closure"],
    }


def _random_finite(seed: int, size: int) -> dict:
    rng = random.Random(seed)
    spaces = {}
    for name, n in (("a", 2), ("b", 3)):
        spaces[name] = {"kind": "finite", "weights": [_r(abs(random_rational(rng, 4))) for _ in range(n)]}
    tensors = {}
    for i in range(size):
        k = rng.randint(1, 3)
        terms = [[_finite(random_rational(rng) for _ in range(2)), _finite(random_rational(rng) for _ in range(3))]
                 for _ in range(k)]
        tensors[f"t{i:03d}"] = {"x": "a", "y": "b", "terms": terms}
    memberships = []
    for i in range(size):
        while True:
            dim = rng.randint(1, 2)
            basis = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(dim)]
            try:
                SubspaceBasis(tuple(FiniteFunction(v) for v in basis))
                break
            except MalformedInputError:
                continue
        coeffs = [rng.randint(-1, 1) for _ in range(dim)]
        f = [sum(c * v[z] for c, v in zip(coeffs, basis)) for z in range(3)]
        if rng.random() < 0.3:
            f[rng.randrange(3)] += 1
        memberships.append({"id": f"m{i:03d}", "basis": [[_r(x) for x in v] for v in basis], "f": [_r(x) for x in f]})
    params = dict(DEFAULT_PARAMETERS)
    return {
        "seed": seed, "parameters": params, "spaces": spaces, "tensors": tensors,
        "memberships": memberships, "suites": ["axioms", "product", "fubini", "lemma6", "closure"],
    }


def generate(kind: str, seed: int = 0, size: int = 3) -> dict:
    if kind == "paper-demos":
        return _paper_demos()
    if kind == "random-steps":
        return _random_steps(seed, size)
    if kind == "random-finite":
        return _random_finite(seed, size)
    raise ScenarioError(f"unknown scenario kind {kind!r}; expected one of {list(KINDS)}")


def dumps(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"
