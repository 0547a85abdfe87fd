"""Value semantics shared by the executor: comparisons, ordering, coercion.

Engine values are plain Python: None (null), int/float (numbers widen to
each other), str (lexicographic), and datetime.date at day precision.
"""

from __future__ import annotations

import re
from datetime import date

from ..catalog import parse_date

Value = None | int | float | str | date

_NUMERIC_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)$")

# Rank used to give mixed-type columns a total order (nulls first).
_TYPE_RANK = {type(None): 0, bool: 1, int: 1, float: 1, date: 2, str: 3}


def type_rank(value: Value) -> int:
    return _TYPE_RANK.get(type(value), 4)


def sort_key(value: Value):
    """Total-order key usable across the value kinds of one column."""
    rank = type_rank(value)
    if value is None:
        return (0, 0)
    if rank == 2:
        return (2, value.toordinal())
    return (rank, value)


def compare(a: Value, b: Value) -> int:
    """Three-way comparison under the column ordering (nulls first)."""
    ka, kb = sort_key(a), sort_key(b)
    if ka[0] != kb[0]:
        return -1 if ka[0] < kb[0] else 1
    if ka[1] == kb[1]:
        return 0
    return -1 if ka[1] < kb[1] else 1


def _coerce_pair(a: Value, b: Value) -> tuple[Value, Value] | None:
    """Bring a column value and a literal onto one comparable domain."""
    if isinstance(a, (int, float)) and isinstance(b, (int, float)):
        return a, b
    if isinstance(a, str) and isinstance(b, str):
        return a, b
    if isinstance(a, date) and isinstance(b, date):
        return a, b
    if isinstance(a, date) and isinstance(b, str):
        parsed = parse_date(b)
        return (a, parsed) if parsed is not None else None
    if isinstance(a, str) and isinstance(b, date):
        parsed = parse_date(a)
        return (parsed, b) if parsed is not None else None
    if isinstance(a, (int, float)) and isinstance(b, str):
        return (a, float(b)) if _NUMERIC_RE.match(b.strip()) else None
    if isinstance(a, str) and isinstance(b, (int, float)):
        return (float(a), b) if _NUMERIC_RE.match(a.strip()) else None
    return None


def compare_for_predicate(a: Value, b: Value) -> int | None:
    """Three-way comparison for WHERE clauses; None when incomparable.

    Any comparison against null is unknown, which filters the row out.
    """
    if a is None or b is None:
        return None
    pair = _coerce_pair(a, b)
    if pair is None:
        return None
    left, right = pair
    if left == right:
        return 0
    return -1 if left < right else 1


def like_match(value: Value, pattern: str) -> bool:
    """Case-sensitive SQL LIKE with ``%`` (any run) and ``_`` (any char)."""
    if not isinstance(value, str):
        return False
    regex = "".join(
        ".*" if ch == "%" else "." if ch == "_" else re.escape(ch)
        for ch in pattern
    )
    return re.fullmatch(regex, value) is not None
