"""Hand-rolled lexer and recursive-descent parser for VQL sentences.

Keywords are case-insensitive, multi-word chart types are recognized, and
backtick-opened quotes (as printed in some prompt examples) are normalized
to plain single quotes before lexing. Identifiers needing punctuation or a
reserved word can be double-quoted: ``"dorm name"``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

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
)

RESERVED = {
    "VISUALIZE", "SELECT", "FROM", "JOIN", "ON", "WHERE", "GROUP", "ORDER",
    "BY", "ASC", "DESC", "BIN", "AND", "OR", "IS", "NOT", "NULL", "LIKE",
    "AS", "DISTINCT", "COUNT", "SUM", "AVG", "MIN", "MAX",
    "BAR", "PIE", "LINE", "SCATTER", "STACKED", "GROUPED",
}

_AGG_NAMES = {"COUNT", "SUM", "AVG", "MIN", "MAX"}
_INT_RE = re.compile(r"^[+-]?\d+$")


class ParseError(Exception):
    """Syntax failure with the byte offset and the expected-token set."""

    def __init__(self, position: int, expected: str, found: str):
        super().__init__(
            f"expected {expected} at offset {position}, found {found}"
        )
        self.position = position
        self.expected = expected
        self.found = found

    def render(self) -> str:
        return f"ParseError: {self}"


@dataclass(frozen=True)
class _Token:
    kind: str  # WORD, QIDENT, STRING, NUMBER, SYMBOL, EOF
    text: str
    pos: int

    @property
    def upper(self) -> str:
        return self.text.upper()


_SYMBOLS = ("<=", ">=", "!=", "<>", "=", "<", ">", "(", ")", ",", ".", "-", "*")


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "'":
            end = text.find("'", i + 1)
            if end < 0:
                raise ParseError(i, "closing quote", "end of input")
            tokens.append(_Token("STRING", text[i + 1 : end], i))
            i = end + 1
            continue
        if ch == '"':
            end = text.find('"', i + 1)
            if end < 0:
                raise ParseError(i, "closing double quote", "end of input")
            tokens.append(_Token("QIDENT", text[i + 1 : end], i))
            i = end + 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            while j < n and (text[j].isdigit() or text[j] == "."):
                j += 1
            tokens.append(_Token("NUMBER", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("WORD", text[i:j], i))
            i = j
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(_Token("SYMBOL", sym, i))
                i += len(sym)
                break
        else:
            raise ParseError(i, "token", repr(ch))
    tokens.append(_Token("EOF", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.idx = 0

    # -- token plumbing ----------------------------------------------------

    def peek(self, ahead: int = 0) -> _Token:
        return self.tokens[min(self.idx + ahead, len(self.tokens) - 1)]

    def advance(self) -> _Token:
        tok = self.tokens[self.idx]
        if tok.kind != "EOF":
            self.idx += 1
        return tok

    def error(self, expected: str) -> ParseError:
        tok = self.peek()
        found = "end of input" if tok.kind == "EOF" else repr(tok.text)
        return ParseError(tok.pos, expected, found)

    def at_keyword(self, *words: str) -> bool:
        tok = self.peek()
        return tok.kind == "WORD" and tok.upper in words

    def accept_keyword(self, *words: str) -> _Token | None:
        if self.at_keyword(*words):
            return self.advance()
        return None

    def expect_keyword(self, word: str) -> _Token:
        tok = self.accept_keyword(word)
        if tok is None:
            raise self.error(word)
        return tok

    def accept_symbol(self, *symbols: str) -> _Token | None:
        tok = self.peek()
        if tok.kind == "SYMBOL" and tok.text in symbols:
            return self.advance()
        return None

    def expect_symbol(self, symbol: str) -> _Token:
        tok = self.accept_symbol(symbol)
        if tok is None:
            raise self.error(repr(symbol))
        return tok

    # -- grammar -----------------------------------------------------------

    def identifier(self, what: str = "identifier") -> str:
        tok = self.peek()
        if tok.kind == "QIDENT":
            return self.advance().text
        if tok.kind == "WORD" and tok.upper not in RESERVED:
            return self.advance().text
        raise self.error(what)

    def column_ref(self) -> ColumnRef:
        first = self.identifier("column reference")
        if self.accept_symbol("."):
            return ColumnRef(table=first, column=self.identifier("column name"))
        return ColumnRef(table=None, column=first)

    def vis_type(self) -> VisType:
        if self.accept_keyword("STACKED"):
            self.expect_keyword("BAR")
            return VisType.STACKED_BAR
        if self.accept_keyword("GROUPED"):
            if self.accept_keyword("LINE"):
                return VisType.GROUPED_LINE
            if self.accept_keyword("SCATTER"):
                return VisType.GROUPED_SCATTER
            raise self.error("LINE or SCATTER")
        tok = self.accept_keyword("BAR", "PIE", "LINE", "SCATTER")
        if tok is None:
            raise self.error("a visualization type")
        return VisType.from_name(tok.text)

    def select_item(self) -> SelectItem:
        tok = self.peek()
        if (
            tok.kind == "WORD"
            and tok.upper in _AGG_NAMES
            and self.peek(1).kind == "SYMBOL"
            and self.peek(1).text == "("
        ):
            fn = AggFn(self.advance().upper)
            self.expect_symbol("(")
            distinct = self.accept_keyword("DISTINCT") is not None
            star = self.peek()
            if star.kind == "SYMBOL" and star.text == ")":
                raise self.error("aggregate argument")
            if star.kind == "SYMBOL" and star.text == "*":
                raise self.error("a column reference (COUNT(*) is not VQL)")
            arg = self.column_ref()
            self.expect_symbol(")")
            return Aggregate(fn=fn, arg=arg, distinct=distinct)
        return self.column_ref()

    def table_ref(self) -> TableRef:
        name = self.identifier("table name")
        if self.accept_keyword("AS"):
            return TableRef(name, self.identifier("table alias"))
        tok = self.peek()
        if tok.kind == "QIDENT" or (
            tok.kind == "WORD" and tok.upper not in RESERVED
        ):
            return TableRef(name, self.identifier("table alias"))
        return TableRef(name)

    def literal(self):
        tok = self.peek()
        negative = False
        if tok.kind == "SYMBOL" and tok.text == "-":
            negative = True
            self.advance()
            tok = self.peek()
        if tok.kind == "STRING":
            return self.advance().text
        if tok.kind == "NUMBER":
            text = self.advance().text
            value = int(text) if _INT_RE.match(text) else float(text)
            return -value if negative else value
        raise self.error("a literal")

    def predicate_atom(self) -> Predicate:
        if self.accept_symbol("("):
            inner = self.predicate_or()
            self.expect_symbol(")")
            return inner
        col = self.column_ref()
        if self.accept_keyword("IS"):
            self.expect_keyword("NOT")
            self.expect_keyword("NULL")
            return IsNotNull(col)
        if self.accept_keyword("LIKE"):
            tok = self.peek()
            if tok.kind != "STRING":
                raise self.error("a string pattern")
            return Compare(col, CompareOp.LIKE, self.advance().text)
        op_tok = self.accept_symbol("=", "!=", "<>", "<=", ">=", "<", ">")
        if op_tok is None:
            raise self.error("a comparison operator")
        op = CompareOp.NE if op_tok.text == "<>" else CompareOp(op_tok.text)
        return Compare(col, op, self.literal())

    def predicate_and(self) -> Predicate:
        node = self.predicate_atom()
        while self.accept_keyword("AND"):
            node = And(node, self.predicate_atom())
        return node

    def predicate_or(self) -> Predicate:
        node = self.predicate_and()
        while self.accept_keyword("OR"):
            node = Or(node, self.predicate_and())
        return node

    def order_target(self):
        tok = self.peek()
        if (
            tok.kind == "WORD"
            and tok.upper in ("X", "Y")
            and not (self.peek(1).kind == "SYMBOL" and self.peek(1).text == ".")
        ):
            self.advance()
            return Axis(tok.upper)
        return self.column_ref()

    def query(self) -> VqlQuery:
        self.expect_keyword("VISUALIZE")
        vis = self.vis_type()

        self.expect_keyword("SELECT")
        select = [self.select_item()]
        while self.accept_symbol(","):
            select.append(self.select_item())

        self.expect_keyword("FROM")
        from_table = self.table_ref()

        joins = []
        while self.accept_keyword("JOIN"):
            table = self.table_ref()
            self.expect_keyword("ON")
            left = self.column_ref()
            self.expect_symbol("=")
            right = self.column_ref()
            joins.append(JoinClause(table, left, right))

        where = None
        if self.accept_keyword("WHERE"):
            where = self.predicate_or()

        group_by: list[ColumnRef] = []
        if self.accept_keyword("GROUP"):
            self.expect_keyword("BY")
            group_by.append(self.column_ref())
            while self.accept_symbol(","):
                group_by.append(self.column_ref())

        order_by = None
        if self.accept_keyword("ORDER"):
            self.expect_keyword("BY")
            target = self.order_target()
            direction = SortDir.ASC
            if self.accept_keyword("DESC"):
                direction = SortDir.DESC
            else:
                self.accept_keyword("ASC")
            order_by = OrderBy(target, direction)

        bin_clause = None
        if self.accept_keyword("BIN"):
            column = self.column_ref()
            self.expect_keyword("BY")
            tok = self.accept_keyword("YEAR", "MONTH", "DAY", "WEEKDAY")
            if tok is None:
                raise self.error("a bin interval (YEAR, MONTH, DAY, WEEKDAY)")
            bin_clause = BinClause(column, BinInterval(tok.upper))

        if self.peek().kind != "EOF":
            raise self.error("end of query")

        return VqlQuery(
            vis=vis,
            select=tuple(select),
            from_table=from_table,
            joins=tuple(joins),
            where=where,
            group_by=tuple(group_by),
            order_by=order_by,
            bin=bin_clause,
        )


def parse_vql(text: str) -> VqlQuery:
    """Parse one VQL sentence into its AST.

    Raises ParseError with a byte offset on malformed input.
    """
    return _Parser(text.replace("`", "'")).query()
