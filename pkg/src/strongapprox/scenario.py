"""Scenario files.

Scenarios are TOML documents::

    name = "inner_p1_quaternion"
    mode = "inner"                      # or "outer"
    excluded_places = ["t2-p", "t4-p"]
    has_primitive_root = false

    [brauer_class]                      # required for mode = "inner"
    numerator = 1
    denominator = 2

    [curve]
    index = 1
    pic0_trivial_mod = "all"            # or a list of positive integers
    places = [{id = "t", degree = 1}, {id = "t2-p", degree = 2}]

    [oracle]                            # optional
    support = ["t"]
    budget = 1000000

    [outer]                             # required for mode = "outer"
    mode = "constant_unramified"        # or "declared"
    declared_types = {t = "inert"}      # declared mode only
    local_data = {t = {unramified = true, exponent = 3}}

Every validation error carries the dotted path of the offending field.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .arith import QZElem
from .brauer import BrauerClass
from .curve import Curve, Place
from .errors import StrongApproxError, ValidationError
from .inner import DEFAULT_BUDGET, SAProblem
from .outer import (
    DECLARED_NAMES,
    ExtensionMode,
    LocalData,
    OuterProblem,
    QuadExtension,
    check_ramified_bounds,
)

__all__ = [
    "OracleSpec",
    "Scenario",
    "BUNDLED",
    "parse_scenario",
    "loads_scenario",
    "load_scenario",
    "resolve_scenario_path",
    "bundled_scenario_bytes",
]

BUNDLED = ("inner_p1_quaternion", "outer_q5_cubic")


@dataclass(frozen=True)
class OracleSpec:
    support: tuple[str, ...] | None = None
    budget: int = DEFAULT_BUDGET


@dataclass(frozen=True)
class Scenario:
    name: str
    mode: str
    curve: Curve
    excluded_places: tuple[str, ...]
    brauer_class: BrauerClass | None = None
    outer: OuterProblem | None = None
    has_primitive_root: bool = False
    oracle: OracleSpec | None = None

    def sa_problem(self) -> SAProblem:
        if self.brauer_class is None:
            raise ValidationError("inner mode requires a Brauer class", "brauer_class")
        return SAProblem(self.curve, self.brauer_class, frozenset(self.excluded_places))


def _fail(path: str, message: str):
    raise ValidationError(message, path)


def _table(data: Any, path: str) -> dict:
    if not isinstance(data, dict):
        _fail(path, f"expected a table, got {type(data).__name__}")
    return data


def _get(data: dict, key: str, path: str, kind, required: bool = True, default=None):
    full = f"{path}.{key}" if path else key
    if key not in data:
        if required:
            _fail(full, "missing required field")
        return default
    value = data[key]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        _fail(full, f"expected an integer, got {value!r}")
    if kind is not int and not isinstance(value, kind):
        names = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        _fail(full, f"expected {names}, got {value!r}")
    return value


def _positive(value: int, path: str) -> int:
    if value < 1:
        _fail(path, f"must be a positive integer, got {value}")
    return value


def _rewrap(exc: ValidationError, path: str) -> ValidationError:
    if exc.path is None:
        exc.path = path
    return exc


def _parse_curve(data: Any) -> Curve:
    curve = _table(data, "curve")
    index = _positive(_get(curve, "index", "curve", int), "curve.index")
    raw_pic = _get(curve, "pic0_trivial_mod", "curve", (str, list), required=False, default=[])
    pic_all = False
    pic_mods: list[int] = []
    if isinstance(raw_pic, str):
        if raw_pic != "all":
            _fail("curve.pic0_trivial_mod", f'expected "all" or a list of integers, got {raw_pic!r}')
        pic_all = True
    else:
        for i, m in enumerate(raw_pic):
            if isinstance(m, bool) or not isinstance(m, int):
                _fail(f"curve.pic0_trivial_mod[{i}]", f"expected an integer, got {m!r}")
            pic_mods.append(_positive(m, f"curve.pic0_trivial_mod[{i}]"))
    raw_places = _get(curve, "places", "curve", list)
    places = []
    seen = set()
    for i, entry in enumerate(raw_places):
        path = f"curve.places[{i}]"
        entry = _table(entry, path)
        pid = _get(entry, "id", path, str)
        if not pid:
            _fail(f"{path}.id", "place id must be non-empty")
        if pid in seen:
            _fail(f"{path}.id", f"duplicate place id {pid!r}")
        seen.add(pid)
        degree = _positive(_get(entry, "degree", path, int), f"{path}.degree")
        if degree % index:
            _fail(f"{path}.degree", f"index {index} does not divide degree {degree}")
        places.append(Place(pid, degree))
    label = _get(curve, "label", "curve", str, required=False, default="")
    return Curve(index, tuple(places), frozenset(pic_mods), pic_all, label)


def _parse_place_list(raw: Any, path: str, curve: Curve) -> tuple[str, ...]:
    if not isinstance(raw, list):
        _fail(path, f"expected a list of place ids, got {raw!r}")
    out = []
    for i, pid in enumerate(raw):
        if not isinstance(pid, str):
            _fail(f"{path}[{i}]", f"expected a place id string, got {pid!r}")
        if pid not in curve:
            _fail(f"{path}[{i}]", f"unknown place id {pid!r}")
        if pid in out:
            _fail(f"{path}[{i}]", f"place {pid!r} listed twice")
        out.append(pid)
    return tuple(out)


def _parse_outer(data: Any, curve: Curve) -> OuterProblem:
    outer = _table(data, "outer")
    raw_mode = _get(outer, "mode", "outer", str)
    try:
        mode = ExtensionMode(raw_mode)
    except ValueError:
        _fail("outer.mode", f'expected "constant_unramified" or "declared", got {raw_mode!r}')
    declared = {}
    raw_types = _get(outer, "declared_types", "outer", dict, required=False, default=None)
    if mode is ExtensionMode.DECLARED:
        if raw_types is None:
            _fail("outer.declared_types", "declared mode requires declared_types")
        for pid, name in raw_types.items():
            path = f"outer.declared_types.{pid}"
            if pid not in curve:
                _fail(path, f"unknown place id {pid!r}")
            if name not in DECLARED_NAMES:
                _fail(path, f'expected "split", "inert" or "ramified", got {name!r}')
            declared[pid] = DECLARED_NAMES[name]
        for pid in curve.place_ids():
            if pid not in declared:
                _fail("outer.declared_types", f"no ramification type for place {pid!r}")
    elif raw_types:
        _fail("outer.declared_types", "only allowed in declared mode")
    local = {}
    raw_local = _get(outer, "local_data", "outer", dict, required=False, default={})
    for pid, entry in raw_local.items():
        path = f"outer.local_data.{pid}"
        if pid not in curve:
            _fail(path, f"unknown place id {pid!r}")
        entry = _table(entry, path)
        unramified = _get(entry, "unramified", path, bool)
        exponent = _positive(_get(entry, "exponent", path, int), f"{path}.exponent")
        local[pid] = LocalData(unramified, exponent)
    problem = OuterProblem(curve, QuadExtension(mode, declared), local)
    try:
        check_ramified_bounds(problem)
    except ValidationError as exc:
        raise _rewrap(exc, "outer.local_data") from None
    return problem


def parse_scenario(data: dict) -> Scenario:
    """Build a :class:`Scenario` from decoded TOML, validating every module invariant."""
    data = _table(data, "<root>")
    name = _get(data, "name", "", str)
    mode = _get(data, "mode", "", str)
    if mode not in ("inner", "outer"):
        _fail("mode", f'expected "inner" or "outer", got {mode!r}')
    try:
        curve = _parse_curve(_get(data, "curve", "", dict))
    except ValidationError as exc:
        raise _rewrap(exc, "curve") from None
    excluded = _parse_place_list(_get(data, "excluded_places", "", list), "excluded_places", curve)
    if not excluded:
        _fail("excluded_places", "S must contain at least one place")
    has_root = _get(data, "has_primitive_root", "", bool, required=False, default=False)

    brauer = None
    raw_brauer = _get(data, "brauer_class", "", dict, required=(mode == "inner"))
    if raw_brauer is not None:
        num = _get(raw_brauer, "numerator", "brauer_class", int)
        den = _get(raw_brauer, "denominator", "brauer_class", int)
        if den == 0:
            _fail("brauer_class.denominator", "must be non-zero")
        brauer = BrauerClass(QZElem.of(num, den))

    outer = None
    if mode == "outer":
        outer = _parse_outer(_get(data, "outer", "", dict), curve)
    elif "outer" in data:
        _fail("outer", "only allowed when mode = \"outer\"")

    oracle = None
    raw_oracle = _get(data, "oracle", "", dict, required=False)
    if raw_oracle is not None:
        support = None
        if "support" in raw_oracle:
            support = _parse_place_list(raw_oracle["support"], "oracle.support", curve)
            for i, pid in enumerate(support):
                if pid in excluded:
                    _fail(f"oracle.support[{i}]", f"place {pid!r} lies in S")
        budget = _positive(
            _get(raw_oracle, "budget", "oracle", int, required=False, default=DEFAULT_BUDGET),
            "oracle.budget",
        )
        oracle = OracleSpec(support, budget)

    scenario = Scenario(name, mode, curve, excluded, brauer, outer, has_root, oracle)
    if mode == "inner":
        problem = scenario.sa_problem()
        if not problem.has_pic0_hypothesis():
            _fail(
                "curve.pic0_trivial_mod",
                f"Pic⁰(X)/m = 0 must be asserted for m = {problem.m}, the exponent over K",
            )
    return scenario


def loads_scenario(raw: bytes | str) -> Scenario:
    text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ValidationError(f"not valid TOML: {exc}", "<file>") from None
    try:
        return parse_scenario(data)
    except ValidationError:
        raise
    except StrongApproxError as exc:  # pragma: no cover - parse paths re-raise as validation
        raise ValidationError(str(exc), "<root>") from None


def bundled_scenario_bytes(name: str) -> bytes:
    return resources.files("strongapprox.scenarios").joinpath(f"{name}.toml").read_bytes()


def resolve_scenario_path(spec: str) -> bytes:
    """Read a scenario from disk, falling back to a bundled one.

    ``examples/inner_p1_quaternion``, ``inner_p1_quaternion`` and the same
    with a ``.toml`` suffix all name the bundled file when no such path exists.
    """
    path = Path(spec)
    if path.is_file():
        return path.read_bytes()
    stem = path.name[:-5] if path.name.endswith(".toml") else path.name
    if stem in BUNDLED and path.parent in (Path("."), Path("examples")):
        return bundled_scenario_bytes(stem)
    raise ValidationError(f"no such scenario file: {spec}", "<file>")


def load_scenario(spec: str) -> Scenario:
    return loads_scenario(resolve_scenario_path(spec))
