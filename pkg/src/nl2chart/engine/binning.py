"""Temporal binning with canonical ordering and zero-fill.

Weekday and month bins map dates to day/month names, re-aggregate the Y
column(s) by summing, and reindex to the full canonical name list, inserting
zero rows for absent buckets (per group series when a group column exists).
Year and day bins keep ascending order without fill.
"""

from __future__ import annotations

import functools
from datetime import date

from ..vql.ast import BinClause, BinInterval, VisType
from .errors import BAD_BIN, EngineError, TYPE_MISMATCH
from .table import DataColumn, DataTable, Role
from .values import Value, compare

WEEKDAY_ORDER = (
    "Monday",
    "Tuesday",
    "Wednesday",
    "Thursday",
    "Friday",
    "Saturday",
    "Sunday",
)

MONTH_ORDER = (
    "January",
    "February",
    "March",
    "April",
    "May",
    "June",
    "July",
    "August",
    "September",
    "October",
    "November",
    "December",
)


def bin_label(value: Value, interval: BinInterval) -> Value:
    """Bucket label for one x value; idempotent on already-binned labels."""
    if interval is BinInterval.WEEKDAY:
        if isinstance(value, date):
            return WEEKDAY_ORDER[value.weekday()]
        if isinstance(value, str) and value in WEEKDAY_ORDER:
            return value
    elif interval is BinInterval.MONTH:
        if isinstance(value, date):
            return MONTH_ORDER[value.month - 1]
        if isinstance(value, str) and value in MONTH_ORDER:
            return value
    elif interval is BinInterval.YEAR:
        if isinstance(value, date):
            return value.year
        if isinstance(value, bool):
            pass
        elif isinstance(value, int):
            return value
        elif isinstance(value, float) and value.is_integer():
            return int(value)
    elif interval is BinInterval.DAY:
        if isinstance(value, date):
            return value
    raise EngineError(
        BAD_BIN,
        f"cannot bin value {value!r} by {interval.value}; "
        "the x column must be date-like (or integer for YEAR)",
    )


def apply_binning(t: DataTable, bin_clause: BinClause, vis: VisType) -> DataTable:
    """Re-aggregate a result table into canonical bins (appendix semantics).

    The x column must hold the binned values; Y columns are summed per
    (bucket, group). Null x rows cannot be bucketed and are dropped.
    """
    x_idx = t.column_index(Role.X)
    if x_idx is None:
        raise EngineError(BAD_BIN, "result table has no x column to bin")
    x_col = t.columns[x_idx]
    if x_col.name.lower() != bin_clause.column.column.lower():
        raise EngineError(
            BAD_BIN,
            f"BIN column '{bin_clause.column.column}' must be the x-axis "
            f"column '{x_col.name}'",
        )
    group_idx = t.column_index(Role.GROUP)
    y_idxs = [i for i, c in enumerate(t.columns) if c.role is Role.Y]

    for i in y_idxs:
        for v in t.column_values(i):
            if v is not None and not isinstance(v, (int, float)):
                raise EngineError(
                    TYPE_MISMATCH,
                    f"cannot re-aggregate non-numeric y column "
                    f"'{t.columns[i].name}' while binning",
                )

    interval = bin_clause.interval
    sums: dict[tuple, list] = {}
    float_y = [False] * len(y_idxs)
    for row in t.rows:
        x = row[x_idx]
        if x is None:
            continue
        bucket = bin_label(x, interval)
        group = row[group_idx] if group_idx is not None else None
        acc = sums.setdefault((bucket, group), [0] * len(y_idxs))
        for pos, i in enumerate(y_idxs):
            v = row[i]
            if v is None:
                continue
            if isinstance(v, float):
                float_y[pos] = True
            acc[pos] += v

    if interval is BinInterval.WEEKDAY:
        buckets: list[Value] = list(WEEKDAY_ORDER)
        zero_fill = True
    elif interval is BinInterval.MONTH:
        buckets = list(MONTH_ORDER)
        zero_fill = True
    else:
        observed = {key[0] for key in sums}
        buckets = sorted(observed, key=functools.cmp_to_key(compare))
        zero_fill = False

    if group_idx is not None:
        groups = sorted(
            {key[1] for key in sums}, key=functools.cmp_to_key(compare)
        )
    else:
        groups = [None]

    fills = [0.0 if is_float else 0 for is_float in float_y]
    out_rows: list[tuple[Value, ...]] = []
    for bucket in buckets:
        for group in groups:
            key = (bucket, group)
            if key in sums:
                y_values = sums[key]
            elif zero_fill:
                y_values = fills
            else:
                continue
            values_by_index: dict[int, Value] = {x_idx: bucket}
            for pos, i in enumerate(y_idxs):
                values_by_index[i] = y_values[pos]
            if group_idx is not None:
                values_by_index[group_idx] = group
            out_rows.append(
                tuple(values_by_index.get(i) for i in range(len(t.columns)))
            )

    columns = tuple(DataColumn(c.name, c.role) for c in t.columns)
    return DataTable(columns, tuple(out_rows))
