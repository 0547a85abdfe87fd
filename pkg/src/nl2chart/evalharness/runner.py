"""Batch evaluation: run cases through a pipeline, aggregate the metrics.

The report is deterministic for a scripted pipeline: no timestamps, fixed
key order, rates rounded to two decimals only at serialization time.
"""

from __future__ import annotations

import csv
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from ..agents.orchestrator import FailureReport, OrchestrationResult
from ..catalog import DatabaseCatalog, load_database
from ..engine import RenderUnavailable, render_chart, spec_to_json
from ..engine.table import jsonable_value
from .cases import BenchmarkCase
from .checks import CheckResult, Outcome, OutcomeKind, classify_outcome, run_checks

logger = logging.getLogger(__name__)

Pipeline = Callable[
    [BenchmarkCase, DatabaseCatalog], OrchestrationResult | FailureReport
]
ReadabilityFn = Callable[[OrchestrationResult], float]


class MissingDatabase(Exception):
    def __init__(self, db_id: str):
        super().__init__(f"no database directory for db_id '{db_id}'")
        self.db_id = db_id


@dataclass
class CaseReport:
    case_id: str
    outcome: OutcomeKind
    failed_check: str | None
    detail: str
    iterations_used: int
    readability: float | None
    quality: float | None
    internal_fault: bool = False


@dataclass
class Breakdown:
    n_cases: int = 0
    invalid: int = 0
    illegal: int = 0
    passed: int = 0

    def add(self, outcome: OutcomeKind) -> None:
        self.n_cases += 1
        if outcome is OutcomeKind.INVALID:
            self.invalid += 1
        elif outcome is OutcomeKind.ILLEGAL:
            self.illegal += 1
        else:
            self.passed += 1

    @property
    def pass_rate(self) -> float:
        return 100.0 * self.passed / self.n_cases if self.n_cases else 0.0


@dataclass
class MetricsReport:
    n_cases: int
    invalid: int
    illegal: int
    passed: int
    mean_readability: float | None
    mean_quality: float | None
    per_hardness: dict[str, Breakdown] = field(default_factory=dict)
    per_chart_type: dict[str, Breakdown] = field(default_factory=dict)
    cases: list[CaseReport] = field(default_factory=list)

    @property
    def invalid_rate(self) -> float:
        return 100.0 * self.invalid / self.n_cases if self.n_cases else 0.0

    @property
    def illegal_rate(self) -> float:
        return 100.0 * self.illegal / self.n_cases if self.n_cases else 0.0

    @property
    def pass_rate(self) -> float:
        return 100.0 * self.passed / self.n_cases if self.n_cases else 0.0

    @property
    def internal_faults(self) -> int:
        return sum(1 for c in self.cases if c.internal_fault)


def _breakdown_dict(breakdown: Breakdown) -> dict:
    return {
        "n_cases": breakdown.n_cases,
        "invalid": breakdown.invalid,
        "illegal": breakdown.illegal,
        "pass": breakdown.passed,
        "pass_rate": round(breakdown.pass_rate, 2),
    }


def report_to_dict(report: MetricsReport) -> dict:
    return {
        "summary": {
            "n_cases": report.n_cases,
            "invalid_rate": round(report.invalid_rate, 2),
            "illegal_rate": round(report.illegal_rate, 2),
            "pass_rate": round(report.pass_rate, 2),
            "mean_readability": (
                round(report.mean_readability, 2)
                if report.mean_readability is not None
                else None
            ),
            "mean_quality": (
                round(report.mean_quality, 2)
                if report.mean_quality is not None
                else None
            ),
            "layout_check": "not evaluated",
            "scale_ticks_check": "not evaluated",
        },
        "per_hardness": {
            k: _breakdown_dict(v) for k, v in sorted(report.per_hardness.items())
        },
        "per_chart_type": {
            k: _breakdown_dict(v)
            for k, v in sorted(report.per_chart_type.items())
        },
        "cases": [
            {
                "case_id": c.case_id,
                "outcome": c.outcome.value,
                "failed_check": c.failed_check,
                "detail": c.detail,
                "iterations_used": c.iterations_used,
                "readability": c.readability,
                "quality": c.quality,
            }
            for c in report.cases
        ],
    }


def _evaluate_one(
    case: BenchmarkCase,
    catalog: DatabaseCatalog,
    pipeline: Pipeline,
    readability_fn: ReadabilityFn | None,
) -> tuple[CaseReport, OrchestrationResult | FailureReport | None]:
    internal_fault = False
    result: OrchestrationResult | FailureReport | None
    try:
        result = pipeline(case, catalog)
    except Exception as exc:  # noqa: BLE001 - an internal fault is a result
        logger.exception("case %s crashed", case.case_id)
        internal_fault = True
        result = None
        checks = [
            CheckResult("Execution", False, detail=f"internal fault: {exc}")
        ]
    else:
        checks = run_checks(result, case.ground_truth)

    readability = None
    outcome: Outcome = classify_outcome(checks)
    if (
        outcome.kind is OutcomeKind.PASS
        and readability_fn is not None
        and isinstance(result, OrchestrationResult)
    ):
        readability = readability_fn(result)
        outcome = classify_outcome(checks, readability=readability)

    failed = next((c for c in checks if not c.passed), None)
    iterations = 0
    if result is not None:
        iterations = result.trace.iterations_used
    return (
        CaseReport(
            case_id=case.case_id,
            outcome=outcome.kind,
            failed_check=failed.name if failed else None,
            detail=failed.detail if failed else "",
            iterations_used=iterations,
            readability=outcome.readability,
            quality=outcome.quality,
            internal_fault=internal_fault,
        ),
        result,
    )


def _write_artifacts(
    directory: Path,
    case: BenchmarkCase,
    result: OrchestrationResult | FailureReport | None,
) -> None:
    """Per-case artifacts: chart-spec JSON, the data as CSV, and a PNG."""
    directory.mkdir(parents=True, exist_ok=True)
    if not isinstance(result, OrchestrationResult):
        return
    (directory / f"{case.case_id}.json").write_text(
        spec_to_json(result.spec) + "\n", encoding="utf-8"
    )
    with (directory / f"{case.case_id}.csv").open(
        "w", newline="", encoding="utf-8"
    ) as fh:
        writer = csv.writer(fh)
        writer.writerow([c.name for c in result.table.columns])
        for row in result.table.rows:
            writer.writerow(
                ["" if v is None else jsonable_value(v) for v in row]
            )
    try:
        render_chart(result.spec, directory / f"{case.case_id}.png")
    except RenderUnavailable as exc:
        logger.warning("no raster backend, skipping PNG artifacts: %s", exc)


def run_benchmark(
    cases: list[BenchmarkCase],
    pipeline: Pipeline,
    data_root: str | Path,
    report_path: str | Path | None = None,
    artifacts_dir: str | Path | None = None,
    workers: int = 1,
    readability_fn: ReadabilityFn | None = None,
) -> MetricsReport:
    """Evaluate every case and aggregate Invalid/Illegal/Pass rates.

    Databases are resolved up front so an unknown db_id fails before any
    model call. Cases run independently (optionally in parallel); the
    aggregation is a single-threaded reduction.
    """
    root = Path(data_root)
    catalogs: dict[str, DatabaseCatalog] = {}
    for case in cases:
        if case.db_id not in catalogs:
            db_dir = root / case.db_id
            if not db_dir.is_dir():
                raise MissingDatabase(case.db_id)
            catalogs[case.db_id] = load_database(db_dir)

    def job(case: BenchmarkCase):
        return _evaluate_one(case, catalogs[case.db_id], pipeline, readability_fn)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            evaluated = list(pool.map(job, cases))
    else:
        evaluated = [job(case) for case in cases]

    case_reports = [report for report, _ in evaluated]
    per_hardness: dict[str, Breakdown] = {}
    per_chart_type: dict[str, Breakdown] = {}
    invalid = illegal = passed = 0
    for case, (case_report, _) in zip(cases, evaluated):
        if case_report.outcome is OutcomeKind.INVALID:
            invalid += 1
        elif case_report.outcome is OutcomeKind.ILLEGAL:
            illegal += 1
        else:
            passed += 1
        per_hardness.setdefault(case.hardness.value, Breakdown()).add(
            case_report.outcome
        )
        chart_key = case.ground_truth.chart_types[0].value
        per_chart_type.setdefault(chart_key, Breakdown()).add(case_report.outcome)

    readability_scores = [
        c.readability for c in case_reports if c.readability is not None
    ]
    quality_scores = [c.quality for c in case_reports if c.quality is not None]
    report = MetricsReport(
        n_cases=len(cases),
        invalid=invalid,
        illegal=illegal,
        passed=passed,
        mean_readability=(
            sum(readability_scores) / len(readability_scores)
            if readability_scores
            else None
        ),
        mean_quality=(
            sum(quality_scores) / len(quality_scores) if quality_scores else None
        ),
        per_hardness=per_hardness,
        per_chart_type=per_chart_type,
        cases=case_reports,
    )

    if artifacts_dir is not None:
        for case, (_, result) in zip(cases, evaluated):
            _write_artifacts(Path(artifacts_dir), case, result)
    if report_path is not None:
        Path(report_path).parent.mkdir(parents=True, exist_ok=True)
        Path(report_path).write_text(
            json.dumps(report_to_dict(report), indent=2) + "\n",
            encoding="utf-8",
        )
    return report
