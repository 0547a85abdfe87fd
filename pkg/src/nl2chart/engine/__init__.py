"""Relational execution, binning, and chart-spec construction for VQL."""

from .binning import MONTH_ORDER, WEEKDAY_ORDER, apply_binning, bin_label
from .chartspec import (
    SPEC_VERSION,
    AxisEncoding,
    ChartSpec,
    FieldEncoding,
    SortSpec,
    build_chart_spec,
    spec_from_dict,
    spec_to_dict,
    spec_to_json,
)
from .errors import (
    BAD_BIN,
    EMPTY_RESULT,
    EngineError,
    MISSING_GROUP_BY,
    TYPE_MISMATCH,
    UNKNOWN_COLUMN,
    UNKNOWN_TABLE,
)
from .executor import execute_relational
from .render import RenderUnavailable, build_figure, render_chart
from .table import DataColumn, DataTable, Role, table_from_dict, table_to_dict
from .translate import TranslateResult, translate

__all__ = [
    "BAD_BIN",
    "EMPTY_RESULT",
    "MISSING_GROUP_BY",
    "MONTH_ORDER",
    "SPEC_VERSION",
    "TYPE_MISMATCH",
    "UNKNOWN_COLUMN",
    "UNKNOWN_TABLE",
    "WEEKDAY_ORDER",
    "AxisEncoding",
    "ChartSpec",
    "DataColumn",
    "DataTable",
    "EngineError",
    "FieldEncoding",
    "RenderUnavailable",
    "Role",
    "SortSpec",
    "TranslateResult",
    "apply_binning",
    "bin_label",
    "build_chart_spec",
    "build_figure",
    "execute_relational",
    "render_chart",
    "spec_from_dict",
    "spec_to_dict",
    "spec_to_json",
    "table_from_dict",
    "table_to_dict",
    "translate",
]
