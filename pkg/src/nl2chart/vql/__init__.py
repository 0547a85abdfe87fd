"""VQL: abstract syntax, parsing, canonical printing, and validation."""

from .ast import (
    AggFn,
    Aggregate,
    And,
    Axis,
    BinClause,
    BinInterval,
    ColumnRef,
    Compare,
    CompareOp,
    IsNotNull,
    JoinClause,
    Or,
    OrderBy,
    Predicate,
    SelectItem,
    SortDir,
    TableRef,
    VisType,
    VqlQuery,
    item_label,
)
from .parser import ParseError, parse_vql
from .printer import extract_sketch, print_vql
from .validate import SemanticError, Scope, build_scope, validate_vql

__all__ = [
    "AggFn",
    "Aggregate",
    "And",
    "Axis",
    "BinClause",
    "BinInterval",
    "ColumnRef",
    "Compare",
    "CompareOp",
    "IsNotNull",
    "JoinClause",
    "Or",
    "OrderBy",
    "ParseError",
    "Predicate",
    "Scope",
    "SelectItem",
    "SemanticError",
    "SortDir",
    "TableRef",
    "VisType",
    "VqlQuery",
    "build_scope",
    "extract_sketch",
    "item_label",
    "parse_vql",
    "print_vql",
    "validate_vql",
]
