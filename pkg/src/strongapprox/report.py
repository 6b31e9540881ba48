"""Scenario orchestration and report rendering."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Any

from .brauer import local_exponent
from .errors import StrongApproxError, UnsupportedCaseError
from .inner import (
    DEFAULT_BUDGET,
    AdelicClass,
    ExactnessReport,
    decide_sa,
    verify_exact_sequence,
)
from .outer import check_outer_failure, classify_place, two_rost_image
from .scenario import Scenario, loads_scenario

__all__ = ["LocalRow", "WitnessEntry", "Report", "run_scenario", "run_scenario_bytes", "render", "parse_report"]

DEFAULT_ORACLE_SUPPORT = 3


@dataclass(frozen=True)
class LocalRow:
    place: str
    degree: int
    in_S: bool
    local_order: int | None = None
    ramification: str | None = None
    rost_image: str | None = None


@dataclass(frozen=True)
class WitnessEntry:
    place: str
    value: int
    modulus: int


@dataclass
class Report:
    name: str
    mode: str
    verdict: dict[str, Any]
    defect_order: int | None
    defect_group: dict[str, Any] | None
    local_table: list[LocalRow]
    witness: list[WitnessEntry] | None = None
    oracle: ExactnessReport | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "mode": self.mode,
            "verdict": dict(self.verdict),
            "defect_order": self.defect_order,
            "defect_group": None if self.defect_group is None else dict(self.defect_group),
            "local_table": [asdict(row) for row in self.local_table],
            "witness": None if self.witness is None else [asdict(w) for w in self.witness],
            "oracle": None if self.oracle is None else self.oracle.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Report:
        return cls(
            name=data["name"],
            mode=data["mode"],
            verdict=dict(data["verdict"]),
            defect_order=data["defect_order"],
            defect_group=None if data["defect_group"] is None else dict(data["defect_group"]),
            local_table=[LocalRow(**row) for row in data["local_table"]],
            witness=None if data["witness"] is None else [WitnessEntry(**w) for w in data["witness"]],
            oracle=None if data["oracle"] is None else ExactnessReport.from_dict(data["oracle"]),
        )


def _witness_entries(a: AdelicClass | None) -> list[WitnessEntry] | None:
    if a is None:
        return None
    return [WitnessEntry(pid, n.value, n.modulus) for pid, n in a.entries]


def _run_inner(s: Scenario, with_oracle: bool, workers: int) -> Report:
    problem = s.sa_problem()
    verdict = decide_sa(problem)
    rows = [
        LocalRow(
            place=pid,
            degree=s.curve.place(pid).degree,
            in_S=pid in problem.excluded,
            local_order=local_exponent(problem.brauer, s.curve.place(pid)),
        )
        for pid in s.curve.place_ids()
    ]
    oracle = None
    if with_oracle:
        spec = s.oracle
        support = spec.support if spec is not None else None
        budget = spec.budget if spec is not None else DEFAULT_BUDGET
        bound = len(support) if support is not None else DEFAULT_ORACLE_SUPPORT
        oracle = verify_exact_sequence(problem, bound, support, budget=budget, workers=workers)
    return Report(
        name=s.name,
        mode="inner",
        verdict={
            "holds": verdict.holds,
            "defect_order": verdict.defect_order,
            "exponent": verdict.exponent,
            "index_X": verdict.index,
            "index_S": verdict.index_s,
            "witness_status": verdict.witness_status,
        },
        defect_order=verdict.defect_order,
        defect_group={
            "order": verdict.defect_order,
            "generator_multiple": verdict.generator_multiple,
            "generator": f"{verdict.generator_multiple}·R_H",
        },
        local_table=rows,
        witness=_witness_entries(verdict.witness),
        oracle=oracle,
    )


def _run_outer(s: Scenario) -> Report:
    problem = s.outer
    verdict = check_outer_failure(problem, s.excluded_places)
    rows = []
    for pid in s.curve.place_ids():
        v = s.curve.place(pid)
        data = problem.local_data.get(pid)
        try:
            image = str(two_rost_image(problem, v))
        except UnsupportedCaseError:
            image = "unsupported"
        except StrongApproxError:
            image = None
        rows.append(
            LocalRow(
                place=pid,
                degree=v.degree,
                in_S=pid in s.excluded_places,
                local_order=None if data is None else data.exponent,
                ramification=classify_place(problem.extension, v).value,
                rost_image=image,
            )
        )
    return Report(
        name=s.name,
        mode="outer",
        verdict={
            "failure_proven": verdict.failure_proven,
            "reason": verdict.reason,
            "v0": verdict.v0,
            "witness_order": verdict.witness_order,
            "s_order_bound": verdict.s_order_bound,
        },
        defect_order=None,
        defect_group=None,
        local_table=rows,
        witness=_witness_entries(verdict.witness),
    )


def run_scenario(s: Scenario, with_oracle: bool = False, workers: int = 1) -> Report:
    if s.mode == "inner":
        return _run_inner(s, with_oracle, workers)
    return _run_outer(s)


def run_scenario_bytes(raw: bytes, with_oracle: bool = False, workers: int = 1) -> Report:
    return run_scenario(loads_scenario(raw), with_oracle, workers)


def _verdict_line(r: Report) -> str:
    v = r.verdict
    if r.mode == "inner":
        if v["holds"]:
            return "verdict: strong approximation away from S HOLDS"
        return "verdict: strong approximation away from S FAILS"
    if v["failure_proven"]:
        return "verdict: strong approximation away from S FAILS (outer-type criterion)"
    return "verdict: criterion inapplicable (no conclusion)"


def _render_text(r: Report) -> str:
    lines = [f"scenario: {r.name} ({r.mode} type)", _verdict_line(r)]
    v = r.verdict
    if r.mode == "inner":
        lines.append(f"  exponent over K m = {v['exponent']}, I(X) = {v['index_X']}, I(S) = {v['index_S']}")
        lines.append(
            f"  defect group: cyclic of order {r.defect_order}, generated by {r.defect_group['generator']}"
        )
        if v["witness_status"] == "unavailable":
            lines.append("  witness: unavailable (no registered place outside S realises one)")
    else:
        lines.append(f"  reason: {v['reason']}")
        if v["failure_proven"]:
            lines.append(
                f"  witness contribution order {v['witness_order']} > S bound {v['s_order_bound']}"
            )
    if r.witness:
        parts = ", ".join(f"{w.place} = {w.value} mod {w.modulus}" for w in r.witness)
        lines.append(f"  witness: {parts}")
    lines.append("")

    headers = ["place", "degree", "in S", "order"]
    if r.mode == "outer":
        headers += ["type", "2R_H image"]
    table = []
    for row in r.local_table:
        cells = [
            row.place,
            str(row.degree),
            "yes" if row.in_S else "no",
            "-" if row.local_order is None else str(row.local_order),
        ]
        if r.mode == "outer":
            cells += [row.ramification or "-", row.rost_image or "-"]
        table.append(cells)
    widths = [max(len(h), *(len(c[i]) for c in table)) if table else len(h) for i, h in enumerate(headers)]
    lines.append("  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip())
    lines.append("  ".join("-" * w for w in widths))
    for cells in table:
        lines.append("  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip())

    if r.oracle is not None:
        o = r.oracle
        lines.append("")
        lines.append(f"oracle ({o.label}): {'PASS' if o.passed else 'FAIL'}")
        lines.append(f"  support {', '.join(o.support) or '(empty)'}; {o.tuples} tuples enumerated")
        lines.append(
            f"  image {o.image}; kernel size {o.kernel_size}; "
            f"defect values covered {len(o.defect_values_covered)} of {o.defect_values_total}"
        )
        for failure in o.failures:
            lines.append(f"  failure: {failure}")
        if o.counterexample is not None:
            lines.append(f"  first counterexample: {o.counterexample}")
    return "\n".join(lines) + "\n"


def render(r: Report, format: str = "text") -> bytes:
    if format == "json":
        return (json.dumps(r.to_dict(), indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if format == "text":
        return _render_text(r).encode("utf-8")
    raise ValueError(f"unknown format {format!r}")


def parse_report(raw: bytes | str) -> Report:
    """Inverse of ``render(r, "json")``."""
    return Report.from_dict(json.loads(raw))
