"""Declarative chart specifications built from a query and its result table.

The JSON form is versioned and key-order stable so golden tests can compare
bytes; the web client consumes exactly this schema.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import date

from ..vql.ast import (
    Aggregate,
    Axis,
    BinInterval,
    ColumnRef,
    SortDir,
    VisType,
    VqlQuery,
    item_label,
)
from .table import DataTable, Role, table_from_dict, table_to_dict

SPEC_VERSION = 1


@dataclass(frozen=True)
class SortSpec:
    by: str  # "x" | "y"
    direction: str  # "asc" | "desc"


@dataclass(frozen=True)
class AxisEncoding:
    field: str
    kind: str  # "categorical" | "temporal" | "quantitative"
    sort: SortSpec | None = None


@dataclass(frozen=True)
class FieldEncoding:
    field: str


@dataclass(frozen=True)
class ChartSpec:
    mark: VisType
    x: AxisEncoding
    y: FieldEncoding
    group: FieldEncoding | None
    data: DataTable
    title: str
    x_label: str
    y_label: str


def _x_kind(q: VqlQuery, t: DataTable) -> str:
    x_idx = t.column_index(Role.X)
    values = [v for v in t.column_values(x_idx) if v is not None] if x_idx is not None else []
    if values:
        if all(isinstance(v, date) for v in values):
            return "temporal"
        if all(isinstance(v, (int, float)) for v in values):
            return "quantitative"
        return "categorical"
    if q.bin is not None:
        if q.bin.interval in (BinInterval.WEEKDAY, BinInterval.MONTH):
            return "categorical"
        if q.bin.interval is BinInterval.YEAR:
            return "quantitative"
        return "temporal"
    return "categorical"


def _sort_spec(q: VqlQuery) -> SortSpec | None:
    if q.order_by is None:
        return None
    direction = "desc" if q.order_by.direction is SortDir.DESC else "asc"
    target = q.order_by.target
    if isinstance(target, Axis):
        return SortSpec("x" if target is Axis.X else "y", direction)
    name = target.column.lower()
    for pos, item in enumerate(q.select[:2]):
        if item_label(item).lower() == name:
            return SortSpec("x" if pos == 0 else "y", direction)
        if isinstance(item, Aggregate) and item.arg.column.lower() == name:
            return SortSpec("x" if pos == 0 else "y", direction)
        if isinstance(item, ColumnRef) and item.column.lower() == name:
            return SortSpec("x" if pos == 0 else "y", direction)
    return None


def build_chart_spec(q: VqlQuery, t: DataTable) -> ChartSpec:
    """Bind select items positionally to x / y (/ group) encodings."""
    labels = [c.name for c in t.columns]
    x_label = labels[0]
    y_label = labels[1] if len(labels) > 1 else ""
    group = None
    if q.vis.is_complex and len(labels) > 2:
        group = FieldEncoding(labels[2])
    return ChartSpec(
        mark=q.vis,
        x=AxisEncoding(field=x_label, kind=_x_kind(q, t), sort=_sort_spec(q)),
        y=FieldEncoding(y_label),
        group=group,
        data=t,
        title=f"{q.vis.display} Chart of {y_label} by {x_label}",
        x_label=x_label,
        y_label=y_label,
    )


def spec_to_dict(spec: ChartSpec) -> dict:
    sort = None
    if spec.x.sort is not None:
        sort = {"by": spec.x.sort.by, "direction": spec.x.sort.direction}
    payload = {
        "spec_version": SPEC_VERSION,
        "mark": spec.mark.value,
        "x": {"field": spec.x.field, "kind": spec.x.kind, "sort": sort},
        "y": {"field": spec.y.field},
    }
    if spec.group is not None:
        payload["group"] = {"field": spec.group.field}
    payload["data"] = table_to_dict(spec.data)
    payload["title"] = spec.title
    payload["x_label"] = spec.x_label
    payload["y_label"] = spec.y_label
    return payload


def spec_to_json(spec: ChartSpec) -> str:
    return json.dumps(spec_to_dict(spec), indent=2)


def spec_from_dict(payload: dict) -> ChartSpec:
    if payload.get("spec_version") != SPEC_VERSION:
        raise ValueError(
            f"unsupported spec version: {payload.get('spec_version')!r}"
        )
    sort_payload = payload["x"].get("sort")
    sort = (
        SortSpec(sort_payload["by"], sort_payload["direction"])
        if sort_payload
        else None
    )
    group_payload = payload.get("group")
    return ChartSpec(
        mark=VisType(payload["mark"]),
        x=AxisEncoding(payload["x"]["field"], payload["x"]["kind"], sort),
        y=FieldEncoding(payload["y"]["field"]),
        group=FieldEncoding(group_payload["field"]) if group_payload else None,
        data=table_from_dict(payload["data"]),
        title=payload["title"],
        x_label=payload["x_label"],
        y_label=payload["y_label"],
    )
