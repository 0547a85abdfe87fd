"""Benchmark case files: one JSON object per line.

Expected fields per line:
  case_id, db_id, query, hardness ("easy"|"medium"|"hard"|"extra_hard"),
  ground_truth: {
    chart_types: [mark, ...]           acceptable marks
    rows: [[x, y(, group)], ...]       canonical data multiset
    channels_pinned: bool              x/y swap forbidden when true
    sort: {channel: "x"|"y", direction: "asc"|"desc"} | null
  }
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from ..vql.ast import VisType


class Hardness(Enum):
    EASY = "easy"
    MEDIUM = "medium"
    HARD = "hard"
    EXTRA_HARD = "extra_hard"


@dataclass(frozen=True)
class SortRequirement:
    channel: str  # "x" | "y"
    direction: str  # "asc" | "desc"


@dataclass(frozen=True)
class GroundTruth:
    chart_types: tuple[VisType, ...]
    rows: tuple[tuple, ...]
    channels_pinned: bool = False
    sort: SortRequirement | None = None


@dataclass(frozen=True)
class BenchmarkCase:
    case_id: str
    db_id: str
    query: str
    hardness: Hardness
    ground_truth: GroundTruth


class BadCaseFile(Exception):
    pass


def parse_case(payload: dict) -> BenchmarkCase:
    gt = payload["ground_truth"]
    chart_types = tuple(VisType(v) for v in gt["chart_types"])
    rows = tuple(tuple(row) for row in gt["rows"])
    if not chart_types or not rows:
        raise BadCaseFile(
            f"case {payload.get('case_id')!r}: ground truth needs at least "
            "one chart type and one data row"
        )
    sort_payload = gt.get("sort")
    sort = (
        SortRequirement(sort_payload["channel"], sort_payload["direction"])
        if sort_payload
        else None
    )
    return BenchmarkCase(
        case_id=str(payload["case_id"]),
        db_id=str(payload["db_id"]),
        query=str(payload["query"]),
        hardness=Hardness(payload.get("hardness", "medium")),
        ground_truth=GroundTruth(
            chart_types=chart_types,
            rows=rows,
            channels_pinned=bool(gt.get("channels_pinned", False)),
            sort=sort,
        ),
    )


def load_cases(path: str | Path) -> list[BenchmarkCase]:
    cases = []
    for line_no, line in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        line = line.strip()
        if not line:
            continue
        try:
            cases.append(parse_case(json.loads(line)))
        except (json.JSONDecodeError, KeyError, ValueError) as exc:
            raise BadCaseFile(f"{path}:{line_no}: {exc}") from exc
    return cases


def convert_external_case(payload: dict) -> BenchmarkCase:
    """Stub for converting an upstream benchmark row into our JSONL shape.

    Upstream rows are expected to carry an NL query, a database id, a
    hardness label, the set of acceptable chart types, and a ground-truth
    data table with channel labels plus an optional sort requirement; map
    those onto the fields documented at the top of this module.
    """
    raise NotImplementedError(
        "wire the upstream benchmark's fields into parse_case()"
    )
