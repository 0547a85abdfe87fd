"""AST for the visualization query language.

One sentence pairs a chart type with a SQL-like relational core and an
optional trailing BIN clause. All nodes are frozen values: structural
equality is the round-trip contract for the parser/printer pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union


class VisType(Enum):
    BAR = "bar"
    PIE = "pie"
    LINE = "line"
    SCATTER = "scatter"
    STACKED_BAR = "stacked bar"
    GROUPED_LINE = "grouped line"
    GROUPED_SCATTER = "grouped scatter"

    @property
    def is_complex(self) -> bool:
        """Complex charts carry a third, grouping column."""
        return self in (
            VisType.STACKED_BAR,
            VisType.GROUPED_LINE,
            VisType.GROUPED_SCATTER,
        )

    @property
    def display(self) -> str:
        return self.value.upper()

    @classmethod
    def from_name(cls, name: str) -> "VisType":
        return cls(name.strip().lower())


class AggFn(Enum):
    COUNT = "COUNT"
    SUM = "SUM"
    AVG = "AVG"
    MIN = "MIN"
    MAX = "MAX"


class BinInterval(Enum):
    YEAR = "YEAR"
    MONTH = "MONTH"
    DAY = "DAY"
    WEEKDAY = "WEEKDAY"


class Axis(Enum):
    X = "X"
    Y = "Y"


class SortDir(Enum):
    ASC = "ASC"
    DESC = "DESC"


class CompareOp(Enum):
    EQ = "="
    NE = "!="
    LT = "<"
    LE = "<="
    GT = ">"
    GE = ">="
    LIKE = "LIKE"


Literal = Union[str, int, float]


@dataclass(frozen=True)
class ColumnRef:
    table: str | None
    column: str


@dataclass(frozen=True)
class Aggregate:
    fn: AggFn
    arg: ColumnRef
    distinct: bool = False


SelectItem = Union[ColumnRef, Aggregate]


@dataclass(frozen=True)
class TableRef:
    name: str
    alias: str | None = None

    @property
    def binding(self) -> str:
        """Name a column reference may qualify this table with."""
        return self.alias if self.alias is not None else self.name


@dataclass(frozen=True)
class JoinClause:
    table: TableRef
    on_left: ColumnRef
    on_right: ColumnRef


@dataclass(frozen=True)
class Compare:
    column: ColumnRef
    op: CompareOp
    value: Literal


@dataclass(frozen=True)
class IsNotNull:
    column: ColumnRef


@dataclass(frozen=True)
class And:
    left: "Predicate"
    right: "Predicate"


@dataclass(frozen=True)
class Or:
    left: "Predicate"
    right: "Predicate"


Predicate = Union[Compare, IsNotNull, And, Or]


@dataclass(frozen=True)
class OrderBy:
    target: Union[Axis, ColumnRef]
    direction: SortDir = SortDir.ASC


@dataclass(frozen=True)
class BinClause:
    column: ColumnRef
    interval: BinInterval


@dataclass(frozen=True)
class VqlQuery:
    vis: VisType
    select: tuple[SelectItem, ...]
    from_table: TableRef
    joins: tuple[JoinClause, ...] = ()
    where: Predicate | None = None
    group_by: tuple[ColumnRef, ...] = ()
    order_by: OrderBy | None = None
    bin: BinClause | None = None


def item_label(item: SelectItem) -> str:
    """Output column name for a select item, e.g. ``count_Document_ID``."""
    if isinstance(item, Aggregate):
        prefix = item.fn.value.lower()
        if item.distinct:
            return f"{prefix}_distinct_{item.arg.column}"
        return f"{prefix}_{item.arg.column}"
    return item.column
