"""Result tables produced by the executor; row order is chart order."""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from enum import Enum

from .values import Value


class Role(Enum):
    X = "x"
    Y = "y"
    GROUP = "group"
    PLAIN = "plain"


@dataclass(frozen=True)
class DataColumn:
    name: str
    role: Role


@dataclass(frozen=True)
class DataTable:
    columns: tuple[DataColumn, ...]
    rows: tuple[tuple[Value, ...], ...]

    def column_index(self, role: Role) -> int | None:
        for i, col in enumerate(self.columns):
            if col.role is role:
                return i
        return None

    def column_values(self, index: int) -> list[Value]:
        return [row[index] for row in self.rows]


def jsonable_value(value: Value):
    if isinstance(value, date):
        return value.isoformat()
    return value


def table_to_dict(table: DataTable) -> dict:
    return {
        "columns": [{"name": c.name, "role": c.role.value} for c in table.columns],
        "rows": [[jsonable_value(v) for v in row] for row in table.rows],
    }


def table_from_dict(payload: dict) -> DataTable:
    columns = tuple(
        DataColumn(c["name"], Role(c["role"])) for c in payload["columns"]
    )
    return DataTable(columns, tuple(tuple(row) for row in payload["rows"]))
