"""Rule-based per-case checks and the Invalid / Illegal / Pass outcome.

Checks run in a fixed order - execution, surface form, chart type, data
(with channel swap), order. A failure in the first two makes the case
Invalid (it could not render); a later failure makes it Illegal (it
rendered something that violates the query's requirements).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import date
from enum import Enum

from ..agents.orchestrator import FailureReport, OrchestrationResult
from ..catalog import parse_date
from ..engine import ChartSpec, Role, SPEC_VERSION, spec_to_dict
from ..vql.ast import VisType
from .cases import GroundTruth

CHECK_ORDER = ("Execution", "SurfaceForm", "ChartType", "Data", "Order")

_REL_TOL = 1e-6
_ABS_TOL = 1e-9


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


class OutcomeKind(Enum):
    INVALID = "invalid"
    ILLEGAL = "illegal"
    PASS = "pass"


@dataclass(frozen=True)
class Outcome:
    kind: OutcomeKind
    readability: float | None = None

    @property
    def quality(self) -> float | None:
        """Zero for failed cases; the readability score (if any) otherwise."""
        if self.kind is not OutcomeKind.PASS:
            return 0.0
        return self.readability


def _spec_dict(spec: ChartSpec | dict) -> dict:
    return spec_to_dict(spec) if isinstance(spec, ChartSpec) else spec


def check_execution(
    result: OrchestrationResult | FailureReport,
) -> CheckResult:
    if isinstance(result, OrchestrationResult):
        return CheckResult("Execution", True)
    return CheckResult("Execution", False, detail=result.last_error)


def check_surface_form(spec: ChartSpec | dict) -> CheckResult:
    payload = _spec_dict(spec)
    if payload.get("spec_version") != SPEC_VERSION:
        return CheckResult("SurfaceForm", False, "unsupported spec version")
    try:
        mark = VisType(payload.get("mark"))
    except ValueError:
        return CheckResult(
            "SurfaceForm", False, f"unknown mark {payload.get('mark')!r}"
        )
    if not (payload.get("x") or {}).get("field"):
        return CheckResult("SurfaceForm", False, "missing x field")
    if not (payload.get("y") or {}).get("field"):
        return CheckResult("SurfaceForm", False, "missing y field")
    has_group = bool((payload.get("group") or {}).get("field"))
    if mark.is_complex and not has_group:
        return CheckResult(
            "SurfaceForm", False, f"{mark.value} chart is missing its group encoding"
        )
    if not mark.is_complex and has_group:
        return CheckResult(
            "SurfaceForm", False, f"{mark.value} chart must not carry a group encoding"
        )
    return CheckResult("SurfaceForm", True)


def check_chart_type(spec: ChartSpec | dict, gt: GroundTruth) -> CheckResult:
    payload = _spec_dict(spec)
    mark = payload.get("mark")
    accepted = {v.value for v in gt.chart_types}
    if mark in accepted:
        return CheckResult("ChartType", True)
    return CheckResult(
        "ChartType",
        False,
        f"mark '{mark}' not in accepted set {sorted(accepted)}",
    )


def _canonical(value):
    """Comparable tag-value pair: numbers as floats, dates at day precision,
    text trimmed."""
    if value is None:
        return ("null", "")
    if isinstance(value, bool):
        return ("num", float(value))
    if isinstance(value, (int, float)):
        return ("num", float(value))
    if isinstance(value, date):
        return ("date", value.isoformat())
    text = str(value).strip()
    parsed = parse_date(text)
    if parsed is not None:
        return ("date", parsed.isoformat())
    return ("text", text)


def _tuples_equal(a: tuple, b: tuple) -> bool:
    if len(a) != len(b):
        return False
    for (tag_a, val_a), (tag_b, val_b) in zip(a, b):
        if tag_a != tag_b:
            return False
        if tag_a == "num":
            if not math.isclose(val_a, val_b, rel_tol=_REL_TOL, abs_tol=_ABS_TOL):
                return False
        elif val_a != val_b:
            return False
    return True


def _spec_rows(payload: dict) -> list[tuple]:
    columns = payload["data"]["columns"]
    roles = {c["role"]: i for i, c in enumerate(columns)}
    indices = [roles.get("x"), roles.get("y")]
    if "group" in roles:
        indices.append(roles["group"])
    rows = []
    for row in payload["data"]["rows"]:
        rows.append(tuple(row[i] if i is not None else None for i in indices))
    return rows


def _multiset_diff(
    expected: list[tuple], actual: list[tuple]
) -> tuple[tuple, tuple] | None:
    """First mismatched pair after canonical sorting, or None when equal."""
    if len(expected) != len(actual):
        filler = (("text", "<missing row>"),)
        longer = max(len(expected), len(actual))
        expected = expected + [filler] * (longer - len(expected))
        actual = actual + [filler] * (longer - len(actual))
    expected_sorted = sorted(expected)
    actual_sorted = sorted(actual)
    for e, a in zip(expected_sorted, actual_sorted):
        if not _tuples_equal(e, a):
            return e, a
    return None


def _render_tuple(canonical_row: tuple) -> str:
    return "(" + ", ".join(str(v) for _, v in canonical_row) + ")"


def check_data(spec: ChartSpec | dict, gt: GroundTruth) -> CheckResult:
    payload = _spec_dict(spec)
    actual = [tuple(_canonical(v) for v in row) for row in _spec_rows(payload)]
    expected = [tuple(_canonical(v) for v in row) for row in gt.rows]

    diff = _multiset_diff(expected, actual)
    if diff is None:
        return CheckResult("Data", True)

    if not gt.channels_pinned:
        swapped = [
            (row[1], row[0], *row[2:]) if len(row) >= 2 else row
            for row in actual
        ]
        if _multiset_diff(expected, swapped) is None:
            return CheckResult("Data", True, "matched after x/y channel swap")

    expected_row, actual_row = diff
    return CheckResult(
        "Data",
        False,
        f"first mismatched tuple: expected {_render_tuple(expected_row)}, "
        f"got {_render_tuple(actual_row)}",
    )


def _ordered(values: list[tuple], direction: str) -> bool:
    """Non-strict monotonicity over canonical pairs; ties are fine."""
    for prev, nxt in zip(values, values[1:]):
        if direction == "desc":
            if prev < nxt:
                return False
        elif prev > nxt:
            return False
    return True


def check_order(spec: ChartSpec | dict, gt: GroundTruth) -> CheckResult:
    if gt.sort is None:
        return CheckResult("Order", True)
    payload = _spec_dict(spec)
    columns = payload["data"]["columns"]
    roles = {c["role"]: i for i, c in enumerate(columns)}
    index = roles.get(gt.sort.channel)
    if index is None:
        return CheckResult(
            "Order", False, f"no {gt.sort.channel} channel to sort by"
        )
    values = [_canonical(row[index]) for row in payload["data"]["rows"]]
    if _ordered(values, gt.sort.direction):
        return CheckResult("Order", True)
    return CheckResult(
        "Order",
        False,
        f"rows are not sorted {gt.sort.direction} by {gt.sort.channel}",
    )


def classify_outcome(
    checks: list[CheckResult], readability: float | None = None
) -> Outcome:
    """Map the ordered check results onto Invalid / Illegal / Pass."""
    for check in checks:
        if check.passed:
            continue
        if check.name in ("Execution", "SurfaceForm"):
            return Outcome(OutcomeKind.INVALID, readability=readability)
        return Outcome(OutcomeKind.ILLEGAL, readability=readability)
    return Outcome(OutcomeKind.PASS, readability=readability)


def run_checks(
    result: OrchestrationResult | FailureReport, gt: GroundTruth
) -> list[CheckResult]:
    """Run the check chain, stopping at the first failure."""
    checks = [check_execution(result)]
    if not checks[-1].passed:
        return checks
    assert isinstance(result, OrchestrationResult)
    spec = spec_to_dict(result.spec)
    checks.append(check_surface_form(spec))
    if not checks[-1].passed:
        return checks
    checks.append(check_chart_type(spec, gt))
    if not checks[-1].passed:
        return checks
    checks.append(check_data(spec, gt))
    if not checks[-1].passed:
        return checks
    checks.append(check_order(spec, gt))
    return checks
