"""Semantic validation of VQL queries against a database catalog.

Errors are returned as values, never raised; their single-line rendering is
embedded verbatim in refinement prompts, so the format is stable:
``<CODE>: <message>``.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..catalog import ColumnDef, ColumnType, DatabaseCatalog, TableDef
from .ast import (
    Aggregate,
    AggFn,
    And,
    Axis,
    BinInterval,
    ColumnRef,
    Compare,
    IsNotNull,
    Or,
    Predicate,
    VqlQuery,
    item_label,
)

UNKNOWN_TABLE = "UnknownTable"
UNKNOWN_COLUMN = "UnknownColumn"
ARITY_VIOLATION = "ArityViolation"
NON_NUMERIC_AGGREGATE = "NonNumericAggregate"
BAD_BIN_COLUMN = "BadBinColumn"
MISSING_GROUP_BY = "MissingGroupBy"
DUPLICATE_ALIAS = "DuplicateAlias"


@dataclass(frozen=True)
class SemanticError:
    code: str
    message: str

    def render(self) -> str:
        return f"{self.code}: {self.message}"


@dataclass(frozen=True)
class ScopeEntry:
    binding: str
    table: TableDef


class Scope:
    """Tables visible to column references, in FROM/JOIN order."""

    def __init__(self, entries: list[ScopeEntry]):
        self.entries = entries

    def resolve(self, ref: ColumnRef) -> tuple[int, int] | SemanticError:
        """Locate a column as (scope index, column index)."""
        if ref.table is not None:
            lowered = ref.table.lower()
            for i, entry in enumerate(self.entries):
                if entry.binding.lower() == lowered:
                    idx = entry.table.column_index(ref.column)
                    if idx is None:
                        return SemanticError(
                            UNKNOWN_COLUMN,
                            f"table '{entry.table.name}' has no column "
                            f"'{ref.column}'",
                        )
                    return (i, idx)
            return SemanticError(
                UNKNOWN_TABLE, f"unknown table or alias '{ref.table}'"
            )
        for i, entry in enumerate(self.entries):
            idx = entry.table.column_index(ref.column)
            if idx is not None:
                return (i, idx)
        return SemanticError(
            UNKNOWN_COLUMN, f"unknown column '{ref.column}'"
        )

    def column_def(self, ref: ColumnRef) -> ColumnDef | None:
        located = self.resolve(ref)
        if isinstance(located, SemanticError):
            return None
        i, j = located
        return self.entries[i].table.columns[j]


def build_scope(
    q: VqlQuery, catalog: DatabaseCatalog
) -> tuple[Scope, list[SemanticError]]:
    errors: list[SemanticError] = []
    entries: list[ScopeEntry] = []
    seen: set[str] = set()
    for ref in (q.from_table, *(j.table for j in q.joins)):
        table = catalog.table(ref.name)
        if table is None:
            errors.append(
                SemanticError(UNKNOWN_TABLE, f"unknown table '{ref.name}'")
            )
            continue
        binding = ref.binding
        if binding.lower() in seen:
            errors.append(
                SemanticError(
                    DUPLICATE_ALIAS,
                    f"table alias '{binding}' is bound more than once",
                )
            )
            continue
        seen.add(binding.lower())
        entries.append(ScopeEntry(binding, table))
    return Scope(entries), errors


def _predicate_columns(node: Predicate) -> list[ColumnRef]:
    if isinstance(node, (Compare, IsNotNull)):
        return [node.column]
    if isinstance(node, (And, Or)):
        return _predicate_columns(node.left) + _predicate_columns(node.right)
    return []


def _order_target_matches(q: VqlQuery, ref: ColumnRef) -> bool:
    """ORDER BY column names must land on a select item to be sortable."""
    name = ref.column.lower()
    for item in q.select:
        if item_label(item).lower() == name:
            return True
        if isinstance(item, Aggregate) and item.arg.column.lower() == name:
            return True
        if isinstance(item, ColumnRef) and item.column.lower() == name:
            return True
    return False


def validate_vql(q: VqlQuery, catalog: DatabaseCatalog) -> list[SemanticError]:
    """Run every semantic check; an empty list means the query is executable."""
    scope, errors = build_scope(q, catalog)

    expected_arity = 3 if q.vis.is_complex else 2
    if len(q.select) != expected_arity:
        shape = "complex" if q.vis.is_complex else "simple"
        errors.append(
            SemanticError(
                ARITY_VIOLATION,
                f"{q.vis.display} is a {shape} chart and needs exactly "
                f"{expected_arity} select columns, got {len(q.select)}",
            )
        )

    refs: list[ColumnRef] = []
    for item in q.select:
        refs.append(item.arg if isinstance(item, Aggregate) else item)
    for join in q.joins:
        refs.extend((join.on_left, join.on_right))
    if q.where is not None:
        refs.extend(_predicate_columns(q.where))
    refs.extend(q.group_by)
    if q.bin is not None:
        refs.append(q.bin.column)

    reported: set[tuple[str, str]] = set()
    for ref in refs:
        located = scope.resolve(ref)
        if isinstance(located, SemanticError):
            key = (located.code, located.message)
            if key not in reported:
                reported.add(key)
                errors.append(located)

    for item in q.select:
        if isinstance(item, Aggregate) and item.fn in (AggFn.SUM, AggFn.AVG):
            col = scope.column_def(item.arg)
            if col is not None and col.inferred_type is not ColumnType.NUMBER:
                errors.append(
                    SemanticError(
                        NON_NUMERIC_AGGREGATE,
                        f"{item.fn.value} requires a number column, but "
                        f"'{col.name}' is {col.inferred_type.value}-typed",
                    )
                )

    if q.bin is not None:
        col = scope.column_def(q.bin.column)
        if col is not None:
            ok = col.inferred_type is ColumnType.DATE or (
                col.inferred_type is ColumnType.NUMBER
                and q.bin.interval is BinInterval.YEAR
            )
            if not ok:
                errors.append(
                    SemanticError(
                        BAD_BIN_COLUMN,
                        f"BIN BY {q.bin.interval.value} needs a date column "
                        f"(or a number column for YEAR), but '{col.name}' is "
                        f"{col.inferred_type.value}-typed",
                    )
                )

    has_aggregate = any(isinstance(i, Aggregate) for i in q.select)
    has_bare = any(isinstance(i, ColumnRef) for i in q.select)
    if has_aggregate and has_bare and not q.group_by and q.bin is None:
        errors.append(
            SemanticError(
                MISSING_GROUP_BY,
                "aggregate used alongside plain columns without a GROUP BY "
                "clause; add the missing GROUP BY",
            )
        )

    if q.order_by is not None and isinstance(q.order_by.target, ColumnRef):
        target = q.order_by.target
        located = scope.resolve(target)
        if isinstance(located, SemanticError):
            key = (located.code, located.message)
            if key not in reported:
                errors.append(located)
        elif not _order_target_matches(q, target):
            errors.append(
                SemanticError(
                    UNKNOWN_COLUMN,
                    f"ORDER BY column '{target.column}' does not appear in "
                    "the SELECT list",
                )
            )

    return errors
