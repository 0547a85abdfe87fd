"""Canonical single-line printing and sketch extraction for VQL ASTs."""

from __future__ import annotations

import re

from .ast import (
    Aggregate,
    And,
    Axis,
    ColumnRef,
    Compare,
    CompareOp,
    IsNotNull,
    Or,
    Predicate,
    SelectItem,
    TableRef,
    VqlQuery,
)
from .parser import RESERVED

_BARE_IDENT_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def _ident(name: str) -> str:
    if _BARE_IDENT_RE.match(name) and name.upper() not in RESERVED:
        return name
    return f'"{name}"'


def _column(ref: ColumnRef) -> str:
    if ref.table is not None:
        return f"{_ident(ref.table)}.{_ident(ref.column)}"
    return _ident(ref.column)


def _literal(value) -> str:
    if isinstance(value, str):
        return f"'{value}'"
    return str(value)


def _select_item(item: SelectItem) -> str:
    if isinstance(item, Aggregate):
        distinct = "DISTINCT " if item.distinct else ""
        return f"{item.fn.value}({distinct}{_column(item.arg)})"
    return _column(item)


def _table(ref: TableRef) -> str:
    if ref.alias is not None:
        return f"{_ident(ref.name)} {_ident(ref.alias)}"
    return _ident(ref.name)


def _predicate(node: Predicate) -> str:
    if isinstance(node, Compare):
        if node.op is CompareOp.LIKE:
            return f"{_column(node.column)} LIKE {_literal(node.value)}"
        return f"{_column(node.column)} {node.op.value} {_literal(node.value)}"
    if isinstance(node, IsNotNull):
        return f"{_column(node.column)} IS NOT NULL"
    if isinstance(node, And):
        left = _predicate(node.left)
        if isinstance(node.left, Or):
            left = f"({left})"
        right = _predicate(node.right)
        if isinstance(node.right, (And, Or)):
            right = f"({right})"
        return f"{left} AND {right}"
    if isinstance(node, Or):
        left = _predicate(node.left)
        right = _predicate(node.right)
        if isinstance(node.right, Or):
            right = f"({right})"
        return f"{left} OR {right}"
    raise TypeError(f"not a predicate node: {node!r}")


def _clauses(q: VqlQuery, select_body: str, mask) -> str:
    """Shared clause walk for the canonical printer and the sketch."""
    parts = [f"Visualize {q.vis.display}", f"SELECT {select_body}"]
    parts.append(f"FROM {mask('from', _table(q.from_table))}")
    for join in q.joins:
        parts.append(
            "JOIN {} ON {}".format(
                mask("table", _table(join.table)),
                mask(
                    "on",
                    f"{_column(join.on_left)} = {_column(join.on_right)}",
                ),
            )
        )
    if q.where is not None:
        parts.append(f"WHERE {mask('where', _predicate(q.where))}")
    if q.group_by:
        sep = ", " if mask is _keep else " , "
        parts.append(
            "GROUP BY "
            + sep.join(mask("group", _column(c)) for c in q.group_by)
        )
    if q.order_by is not None:
        target = q.order_by.target
        if isinstance(target, Axis):
            rendered = target.value
        elif target.table is None and target.column.upper() in ("X", "Y"):
            # quote so the name re-parses as a column, not an axis target
            rendered = f'"{target.column}"'
        else:
            rendered = _column(target)
        parts.append(
            f"ORDER BY {mask('order', rendered)} {q.order_by.direction.value}"
        )
    if q.bin is not None:
        parts.append(
            f"BIN {mask('bin', _column(q.bin.column))} BY {q.bin.interval.value}"
        )
    return " ".join(parts)


def _keep(_slot: str, rendered: str) -> str:
    return rendered


def _blank(_slot: str, _rendered: str) -> str:
    return "_"


def print_vql(q: VqlQuery) -> str:
    """Render the canonical single-line form; idempotent under parse/print."""
    select_body = ", ".join(_select_item(item) for item in q.select)
    return _clauses(q, select_body, _keep)


def extract_sketch(q: VqlQuery) -> str:
    """Mask every identifier and literal with ``_``, keeping the skeleton.

    The chart type, bin interval, and sort direction survive; each select
    item, join condition, and predicate collapses to a single placeholder.
    """
    select_body = " , ".join("_" for _ in q.select)
    return _clauses(q, select_body, _blank)
