"""Validation-execution-binning-spec pipeline behind the validator agent.

This engine executes VQL directly and emits a declarative chart spec instead
of generating an imperative plotting script; the observable contract (result
data, chart semantics, single-line error messages) is unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..catalog import DatabaseCatalog
from ..vql.ast import AggFn, Aggregate, ColumnRef, VqlQuery
from ..vql.validate import validate_vql
from .binning import apply_binning
from .chartspec import ChartSpec, build_chart_spec
from .errors import BAD_BIN, EngineError
from .executor import execute_relational
from .table import DataTable


@dataclass(frozen=True)
class TranslateResult:
    table: DataTable
    spec: ChartSpec


def _needs_raw_recompute(q: VqlQuery) -> bool:
    """AVG/MIN/MAX cannot be re-aggregated from per-date partials by
    summing; recompute them from raw rows grouped by bin label instead."""
    return any(
        isinstance(item, Aggregate)
        and item.fn in (AggFn.AVG, AggFn.MIN, AggFn.MAX)
        for item in q.select
    )


def translate(q: VqlQuery, catalog: DatabaseCatalog) -> TranslateResult | EngineError:
    """Total pipeline: validate, execute, bin, build the chart spec.

    Never raises for query-level problems; the first failure comes back as
    an EngineError whose message feeds the refinement prompt.
    """
    errors = validate_vql(q, catalog)
    if errors:
        first = errors[0]
        return EngineError(first.code, first.message)

    try:
        if q.bin is not None and _needs_raw_recompute(q):
            first_item = q.select[0]
            if not (
                isinstance(first_item, ColumnRef)
                and first_item.column.lower() == q.bin.column.column.lower()
            ):
                return EngineError(
                    BAD_BIN,
                    f"BIN column '{q.bin.column.column}' must be the plain "
                    "x-axis column",
                )
            table = execute_relational(q, catalog, x_bin=q.bin)
            table = apply_binning(table, q.bin, q.vis)
        else:
            table = execute_relational(q, catalog)
            if q.bin is not None:
                table = apply_binning(table, q.bin, q.vis)
        spec = build_chart_spec(q, table)
        return TranslateResult(table=table, spec=spec)
    except EngineError as exc:
        return exc
