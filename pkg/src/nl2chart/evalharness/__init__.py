"""Rule-based evaluation harness: per-case checks and batch metrics."""

from .cases import (
    BadCaseFile,
    BenchmarkCase,
    GroundTruth,
    Hardness,
    SortRequirement,
    convert_external_case,
    load_cases,
    parse_case,
)
from .checks import (
    CHECK_ORDER,
    CheckResult,
    Outcome,
    OutcomeKind,
    check_chart_type,
    check_data,
    check_execution,
    check_order,
    check_surface_form,
    classify_outcome,
    run_checks,
)
from .readability import ScoreParseError, judge_readability, parse_score
from .runner import (
    Breakdown,
    CaseReport,
    MetricsReport,
    MissingDatabase,
    report_to_dict,
    run_benchmark,
)

__all__ = [
    "CHECK_ORDER",
    "BadCaseFile",
    "BenchmarkCase",
    "Breakdown",
    "CaseReport",
    "CheckResult",
    "GroundTruth",
    "Hardness",
    "MetricsReport",
    "MissingDatabase",
    "Outcome",
    "OutcomeKind",
    "ScoreParseError",
    "SortRequirement",
    "check_chart_type",
    "check_data",
    "check_execution",
    "check_order",
    "check_surface_form",
    "classify_outcome",
    "convert_external_case",
    "judge_readability",
    "load_cases",
    "parse_case",
    "parse_score",
    "report_to_dict",
    "run_benchmark",
    "run_checks",
]
