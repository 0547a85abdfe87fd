"""In-memory execution of the relational core of a VQL query.

Semantics: FROM/JOIN build the inner equi-joined row set, WHERE filters,
GROUP BY partitions by the listed columns plus, implicitly, every
non-aggregate select item; ORDER BY runs last with a stable sort. Without
ORDER BY, rows come back ascending by the first select column.
"""

from __future__ import annotations

import functools

from ..catalog import DatabaseCatalog
from ..vql.ast import (
    AggFn,
    Aggregate,
    And,
    Axis,
    BinClause,
    ColumnRef,
    Compare,
    CompareOp,
    IsNotNull,
    Or,
    Predicate,
    SelectItem,
    SortDir,
    VqlQuery,
    item_label,
)
from ..vql.validate import Scope, SemanticError, build_scope
from .binning import bin_label
from .errors import (
    EngineError,
    TYPE_MISMATCH,
    UNKNOWN_COLUMN,
)
from .table import DataColumn, DataTable, Role
from .values import Value, compare, compare_for_predicate, like_match

_Row = tuple[tuple[Value, ...], ...]  # one tuple per scope entry


def _resolve(scope: Scope, ref: ColumnRef) -> tuple[int, int]:
    located = scope.resolve(ref)
    if isinstance(located, SemanticError):
        raise EngineError(located.code, located.message)
    return located


def _join_rows(q: VqlQuery, scope: Scope) -> list[_Row]:
    """Progressively join scope tables, applying each ON condition as soon
    as both sides are available."""
    conditions = []
    for join in q.joins:
        left = _resolve(scope, join.on_left)
        right = _resolve(scope, join.on_right)
        conditions.append((left, right))

    rows: list[_Row] = [(r,) for r in scope.entries[0].table.rows]
    applied = [False] * len(conditions)
    for k in range(1, len(scope.entries)):
        table = scope.entries[k].table
        rows = [head + (r,) for head in rows for r in table.rows]
        for c, ((li, lj), (ri, rj)) in enumerate(conditions):
            if applied[c] or max(li, ri) > k:
                continue
            applied[c] = True
            rows = [
                row
                for row in rows
                if compare_for_predicate(row[li][lj], row[ri][rj]) == 0
            ]
    return rows


def _eval_predicate(scope: Scope, node: Predicate, row: _Row) -> bool:
    if isinstance(node, Compare):
        i, j = _resolve(scope, node.column)
        value = row[i][j]
        if node.op is CompareOp.LIKE:
            return isinstance(node.value, str) and like_match(value, node.value)
        result = compare_for_predicate(value, node.value)
        if result is None:
            return False
        return {
            CompareOp.EQ: result == 0,
            CompareOp.NE: result != 0,
            CompareOp.LT: result < 0,
            CompareOp.LE: result <= 0,
            CompareOp.GT: result > 0,
            CompareOp.GE: result >= 0,
        }[node.op]
    if isinstance(node, IsNotNull):
        i, j = _resolve(scope, node.column)
        return row[i][j] is not None
    if isinstance(node, And):
        return _eval_predicate(scope, node.left, row) and _eval_predicate(
            scope, node.right, row
        )
    if isinstance(node, Or):
        return _eval_predicate(scope, node.left, row) or _eval_predicate(
            scope, node.right, row
        )
    raise TypeError(f"not a predicate node: {node!r}")


def _aggregate(fn: AggFn, distinct: bool, values: list[Value]) -> Value:
    non_null = [v for v in values if v is not None]
    if fn is AggFn.COUNT:
        return len(set(non_null)) if distinct else len(non_null)
    if not non_null:
        return None
    if fn in (AggFn.SUM, AggFn.AVG):
        numeric = [v for v in non_null if isinstance(v, (int, float))]
        if len(numeric) != len(non_null):
            raise EngineError(
                TYPE_MISMATCH, f"{fn.value} over non-numeric values"
            )
        if fn is AggFn.SUM:
            return sum(numeric)
        return sum(numeric) / len(numeric)
    ordered = sorted(non_null, key=functools.cmp_to_key(compare))
    return ordered[0] if fn is AggFn.MIN else ordered[-1]


def _canonical_label(scope: Scope, item: SelectItem) -> str:
    """Output column name using the catalog's canonical column casing."""
    ref = item.arg if isinstance(item, Aggregate) else item
    i, j = _resolve(scope, ref)
    canonical = scope.entries[i].table.columns[j].name
    if isinstance(item, Aggregate):
        prefix = item.fn.value.lower()
        if item.distinct:
            return f"{prefix}_distinct_{canonical}"
        return f"{prefix}_{canonical}"
    return canonical


def _order_index(q: VqlQuery) -> tuple[int, SortDir]:
    """Pick the select column ORDER BY sorts on (default: first, ascending)."""
    if q.order_by is None:
        return 0, SortDir.ASC
    target = q.order_by.target
    if isinstance(target, Axis):
        index = 0 if target is Axis.X else 1
        if index >= len(q.select):
            raise EngineError(
                UNKNOWN_COLUMN, f"ORDER BY {target.value} needs a second column"
            )
        return index, q.order_by.direction
    name = target.column.lower()
    for i, item in enumerate(q.select):
        if item_label(item).lower() == name:
            return i, q.order_by.direction
        if isinstance(item, Aggregate) and item.arg.column.lower() == name:
            return i, q.order_by.direction
        if isinstance(item, ColumnRef) and item.column.lower() == name:
            return i, q.order_by.direction
    raise EngineError(
        UNKNOWN_COLUMN,
        f"ORDER BY column '{target.column}' does not appear in the SELECT list",
    )


def _sort_rows(
    rows: list[tuple[Value, ...]], primary: int, direction: SortDir
) -> list[tuple[Value, ...]]:
    sign = -1 if direction is SortDir.DESC else 1

    def cmp(a: tuple[Value, ...], b: tuple[Value, ...]) -> int:
        primary_cmp = compare(a[primary], b[primary])
        if primary_cmp != 0:
            return primary_cmp * sign
        for j in range(len(a)):
            if j == primary:
                continue
            tie = compare(a[j], b[j])
            if tie != 0:
                return tie
        return 0

    return sorted(rows, key=functools.cmp_to_key(cmp))


def _roles(n: int) -> list[Role]:
    roles = [Role.PLAIN] * n
    if n >= 1:
        roles[0] = Role.X
    if n >= 2:
        roles[1] = Role.Y
    if n >= 3:
        roles[2] = Role.GROUP
    return roles


def execute_relational(
    q: VqlQuery,
    catalog: DatabaseCatalog,
    x_bin: BinClause | None = None,
) -> DataTable:
    """Run the relational core over a catalog.

    ``x_bin`` maps the first select column through its bin label *before*
    grouping, so AVG/MIN/MAX recompute from raw rows instead of being
    re-aggregated from per-date partials.
    """
    scope, scope_errors = build_scope(q, catalog)
    if scope_errors:
        first = scope_errors[0]
        raise EngineError(first.code, first.message)

    rows = _join_rows(q, scope)
    if q.where is not None:
        rows = [r for r in rows if _eval_predicate(scope, q.where, r)]

    def eval_item(ref: ColumnRef, row: _Row, binned: bool) -> Value:
        i, j = _resolve(scope, ref)
        value = row[i][j]
        if binned and value is not None:
            return bin_label(value, x_bin.interval)
        return value

    bin_on_first = (
        x_bin is not None
        and q.select
        and isinstance(q.select[0], ColumnRef)
        and q.select[0].column.lower() == x_bin.column.column.lower()
    )

    has_aggregate = any(isinstance(i, Aggregate) for i in q.select)
    out_rows: list[tuple[Value, ...]]
    if has_aggregate or q.group_by:
        key_refs: list[ColumnRef] = []
        key_targets: set[tuple[int, int]] = set()
        bare_targets: dict[tuple[int, int], int] = {}
        for pos, item in enumerate(q.select):
            if isinstance(item, ColumnRef):
                bare_targets[_resolve(scope, item)] = pos
        for ref in q.group_by:
            target = _resolve(scope, ref)
            if target not in key_targets:
                key_targets.add(target)
                key_refs.append(ref)
        for item in q.select:
            if isinstance(item, ColumnRef):
                target = _resolve(scope, item)
                if target not in key_targets:
                    key_targets.add(target)
                    key_refs.append(item)

        groups: dict[tuple, list[_Row]] = {}
        for row in rows:
            key = tuple(
                eval_item(
                    ref,
                    row,
                    bin_on_first
                    and _resolve(scope, ref) == _resolve(scope, q.select[0]),
                )
                for ref in key_refs
            )
            groups.setdefault(key, []).append(row)

        out_rows = []
        for key, members in groups.items():
            key_by_target = {
                _resolve(scope, ref): key[i] for i, ref in enumerate(key_refs)
            }
            record = []
            for item in q.select:
                if isinstance(item, Aggregate):
                    values = [
                        eval_item(item.arg, row, False) for row in members
                    ]
                    record.append(
                        _aggregate(item.fn, item.distinct, values)
                    )
                else:
                    record.append(key_by_target[_resolve(scope, item)])
            out_rows.append(tuple(record))
    else:
        out_rows = [
            tuple(
                eval_item(item, row, bin_on_first and pos == 0)
                for pos, item in enumerate(q.select)
            )
            for row in rows
        ]

    primary, direction = _order_index(q)
    out_rows = _sort_rows(out_rows, primary, direction)

    labels = [_canonical_label(scope, item) for item in q.select]
    roles = _roles(len(labels))
    columns = tuple(
        DataColumn(name, role) for name, role in zip(labels, roles)
    )
    return DataTable(columns, tuple(out_rows))
