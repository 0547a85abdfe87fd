"""CSV database catalogs: loading, column typing, and schema descriptions.

A catalog is an immutable snapshot of a directory of CSV files. Each column
gets a deterministic inferred type (id / number / text / date) plus up to six
value examples, and the whole catalog can be rendered as the textual schema
description consumed by the agent prompts.
"""

from __future__ import annotations

import csv
import logging
import re
from dataclasses import dataclass, field
from datetime import date, datetime
from enum import Enum
from pathlib import Path

logger = logging.getLogger(__name__)

MAX_VALUE_EXAMPLES = 6

# Raw cell values treated as null everywhere.
NULL_TOKENS = ("", "None")

_ID_NAME_RE = re.compile(r"(^|_)id$", re.IGNORECASE)
_INT_RE = re.compile(r"^[+-]?\d+$")
_DECIMAL_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)$")

_DATE_FORMATS = (
    "%Y-%m-%d",
    "%Y-%m-%d %H:%M:%S",
    "%Y/%m/%d",
    "%m/%d/%Y",
)


class ColumnType(Enum):
    ID = "id"
    NUMBER = "number"
    TEXT = "text"
    DATE = "date"


class CatalogError(Exception):
    """Base class for catalog loading and filtering failures."""


class EmptyDatabase(CatalogError):
    def __init__(self, directory: Path):
        super().__init__(f"no CSV files found in {directory}")
        self.directory = directory


class MalformedCsv(CatalogError):
    def __init__(self, file: Path, line: int, reason: str):
        super().__init__(f"{file}:{line}: {reason}")
        self.file = file
        self.line = line


class UnknownFilterEntry(CatalogError):
    def __init__(self, entry: str):
        super().__init__(f"filter references unknown schema entry: {entry}")
        self.entry = entry


class EmptyFilter(CatalogError):
    def __init__(self) -> None:
        super().__init__("schema filter retains no tables")


def is_null(raw: str) -> bool:
    return raw.strip() in NULL_TOKENS


def parse_date(raw: str) -> date | None:
    """Parse an accepted date format at day precision, else None."""
    text = raw.strip()
    for fmt in _DATE_FORMATS:
        try:
            return datetime.strptime(text, fmt).date()
        except ValueError:
            continue
    return None


@dataclass(frozen=True)
class ColumnDef:
    name: str
    inferred_type: ColumnType
    examples: tuple[str, ...]


@dataclass(frozen=True)
class TableDef:
    name: str
    columns: tuple[ColumnDef, ...]
    rows: tuple[tuple[object, ...], ...]

    def column_names(self) -> list[str]:
        return [c.name for c in self.columns]

    def column_index(self, name: str) -> int | None:
        lowered = name.lower()
        for i, c in enumerate(self.columns):
            if c.name.lower() == lowered:
                return i
        return None


@dataclass(frozen=True)
class DatabaseCatalog:
    db_id: str
    tables: tuple[TableDef, ...]

    def table(self, name: str) -> TableDef | None:
        lowered = name.lower()
        for t in self.tables:
            if t.name.lower() == lowered:
                return t
        return None

    def table_names(self) -> list[str]:
        return [t.name for t in self.tables]


@dataclass
class FilteredSchema:
    """Table -> retained column names, as produced by the processor agent."""

    entries: dict[str, list[str]] = field(default_factory=dict)

    @classmethod
    def full(cls, catalog: DatabaseCatalog) -> FilteredSchema:
        return cls({t.name: t.column_names() for t in catalog.tables})


def infer_column_type(
    name: str, values: list[str], table_name: str | None = None
) -> ColumnType:
    """Classify a column from its raw string values.

    Rule order: id (by name, or all-distinct integers), date (>=90% of
    non-null values parse), number (every non-null value is decimal; an
    all-null column lands here), text otherwise.
    """
    non_null = [v.strip() for v in values if not is_null(v)]

    if _ID_NAME_RE.search(name) or (
        table_name is not None and name.lower() == f"{table_name.lower()}id"
    ):
        return ColumnType.ID
    if non_null and all(_INT_RE.match(v) for v in non_null):
        if len(set(non_null)) == len(non_null):
            return ColumnType.ID

    if non_null:
        parsed = sum(1 for v in non_null if parse_date(v) is not None)
        if parsed / len(non_null) >= 0.9:
            return ColumnType.DATE

    if all(_DECIMAL_RE.match(v) for v in non_null):
        return ColumnType.NUMBER

    return ColumnType.TEXT


def render_example(raw: str) -> str:
    """Render one example value: numerics stay bare, everything else quoted."""
    text = raw.strip()
    if _DECIMAL_RE.match(text):
        return text
    return f"'{text}'"


def value_examples(values: list[str], k: int = MAX_VALUE_EXAMPLES) -> list[str]:
    """First k distinct non-null values in row order, rendered for display."""
    seen: list[str] = []
    for raw in values:
        if is_null(raw):
            continue
        text = raw.strip()
        if text not in seen:
            seen.append(text)
            if len(seen) >= k:
                break
    return [render_example(v) for v in seen]


def _typed_cell(raw: str, kind: ColumnType) -> object:
    """Convert a raw CSV cell into an engine value for its column type."""
    if is_null(raw):
        return None
    text = raw.strip()
    if kind is ColumnType.ID:
        return int(text) if _INT_RE.match(text) else text
    if kind is ColumnType.NUMBER:
        if _INT_RE.match(text):
            return int(text)
        if _DECIMAL_RE.match(text):
            return float(text)
        return text
    if kind is ColumnType.DATE:
        return parse_date(text)  # unparseable under an accepted format -> null
    return text


def _load_table(path: Path) -> TableDef:
    try:
        with path.open(newline="", encoding="utf-8-sig") as fh:
            reader = csv.reader(fh)
            try:
                records = list(reader)
            except (csv.Error, UnicodeDecodeError) as exc:
                raise MalformedCsv(path, reader.line_num, str(exc)) from exc
    except UnicodeDecodeError as exc:
        raise MalformedCsv(path, 0, f"unreadable encoding: {exc}") from exc

    if not records:
        raise MalformedCsv(path, 1, "missing header row")

    header = [h.strip() for h in records[0]]
    if len({h.lower() for h in header}) != len(header):
        raise MalformedCsv(path, 1, "duplicate column names")

    raw_rows = records[1:]
    for line_no, row in enumerate(raw_rows, start=2):
        if len(row) != len(header):
            raise MalformedCsv(
                path, line_no, f"expected {len(header)} fields, got {len(row)}"
            )

    table_name = path.stem
    columns = []
    for i, col_name in enumerate(header):
        raw_values = [row[i] for row in raw_rows]
        kind = infer_column_type(col_name, raw_values, table_name=table_name)
        columns.append(
            ColumnDef(col_name, kind, tuple(value_examples(raw_values)))
        )

    typed_rows = tuple(
        tuple(_typed_cell(row[i], columns[i].inferred_type) for i in range(len(header)))
        for row in raw_rows
    )
    return TableDef(table_name, tuple(columns), typed_rows)


def _ordered_csv_paths(root: Path) -> list[Path]:
    """CSV files in manifest order when ``table_order.txt`` exists, else by
    file name; either way repeated loads are structurally equal."""
    paths = sorted(root.glob("*.csv"))
    manifest = root / "table_order.txt"
    if not manifest.exists():
        return paths
    ranks = {
        stem.strip().lower(): i
        for i, stem in enumerate(manifest.read_text(encoding="utf-8").splitlines())
        if stem.strip()
    }
    return sorted(paths, key=lambda p: (ranks.get(p.stem.lower(), len(ranks)), p.stem))


def load_database(directory: str | Path) -> DatabaseCatalog:
    """Load every ``*.csv`` in a directory into an immutable catalog."""
    root = Path(directory)
    paths = _ordered_csv_paths(root)
    if not paths:
        raise EmptyDatabase(root)
    tables = [_load_table(p) for p in paths]
    names = [t.name.lower() for t in tables]
    if len(set(names)) != len(names):
        raise MalformedCsv(root, 0, "duplicate table names in database")
    return DatabaseCatalog(db_id=root.name, tables=tuple(tables))


def _column_annotation(col: ColumnDef) -> str:
    if col.inferred_type is ColumnType.ID:
        return "And This is a id type column"
    if col.examples:
        return f"Value examples: [{', '.join(col.examples)}]."
    if col.inferred_type is ColumnType.NUMBER:
        return "And this is a number type column"
    return "Value examples: []."


def _resolve_filter(
    catalog: DatabaseCatalog, schema_filter: FilteredSchema, strict: bool
) -> list[tuple[TableDef, list[ColumnDef]]]:
    """Map a filter onto catalog tables/columns.

    Strict mode raises UnknownFilterEntry on the first unknown name; tolerant
    mode drops unknown entries with a warning.
    """
    resolved: dict[str, list[ColumnDef]] = {}
    for table_name, col_names in schema_filter.entries.items():
        table = catalog.table(table_name)
        if table is None:
            if strict:
                raise UnknownFilterEntry(table_name)
            logger.warning("schema filter names unknown table %r; dropped", table_name)
            continue
        kept: list[ColumnDef] = []
        for col_name in col_names:
            idx = table.column_index(col_name)
            if idx is None:
                if strict:
                    raise UnknownFilterEntry(f"{table.name}.{col_name}")
                logger.warning(
                    "schema filter names unknown column %r.%r; dropped",
                    table.name,
                    col_name,
                )
                continue
            if table.columns[idx] not in kept:
                kept.append(table.columns[idx])
        if kept:
            resolved.setdefault(table.name, []).extend(
                c for c in kept if c not in resolved.get(table.name, [])
            )
    # Preserve catalog ordering for tables and columns.
    ordered: list[tuple[TableDef, list[ColumnDef]]] = []
    for table in catalog.tables:
        if table.name in resolved:
            kept_set = {c.name for c in resolved[table.name]}
            ordered.append(
                (table, [c for c in table.columns if c.name in kept_set])
            )
    return ordered


def render_description(
    catalog: DatabaseCatalog, schema_filter: FilteredSchema | None = None
) -> str:
    """Render the prompt-facing schema description, bit-exactly.

    One ``# Table:`` block per table; each column on its own line as
    ``  (<name>, <annotation>),`` with the comma omitted on the last column.
    """
    if schema_filter is None:
        selection = [(t, list(t.columns)) for t in catalog.tables]
    else:
        selection = _resolve_filter(catalog, schema_filter, strict=True)

    blocks: list[str] = []
    for table, columns in selection:
        lines = [f"# Table: {table.name}", "["]
        for i, col in enumerate(columns):
            comma = "," if i < len(columns) - 1 else ""
            lines.append(f"  ({col.name}, {_column_annotation(col)}){comma}")
        lines.append("]")
        blocks.append("\n".join(lines))
    return "\n".join(blocks)


def apply_filter(
    catalog: DatabaseCatalog, schema_filter: FilteredSchema
) -> DatabaseCatalog:
    """Project a catalog down to the filtered tables/columns.

    Entries naming unknown tables or columns are dropped with a warning; an
    all-unknown filter raises EmptyFilter.
    """
    selection = _resolve_filter(catalog, schema_filter, strict=False)
    if not selection:
        raise EmptyFilter()

    tables = []
    for table, columns in selection:
        indices = [table.column_index(c.name) for c in columns]
        rows = tuple(tuple(row[i] for i in indices) for row in table.rows)
        tables.append(TableDef(table.name, tuple(columns), rows))
    return DatabaseCatalog(db_id=catalog.db_id, tables=tuple(tables))
