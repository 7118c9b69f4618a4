"""Recursive-descent parser for SDL text.

See ``docs/grammar.md`` for the EBNF.  Raw arithmetic is accepted wherever a
term is expected; its free variables are checked against the sort being
parsed (``i`` for sequences, ``k``/``i`` for enumerations, ``a``/``b``/``i``
inside ``dovetail``).
"""

from __future__ import annotations

import re
from typing import NamedTuple, Optional

from ..errors import CantorkitError, InvalidSpec, SDLSyntaxError, UnboundVariable, ZeroDivisor
from ..permutations import Perm, compose_perm, transposition, unrank_perm, IDENTITY
from .terms import (
    BUILDER_NAMES,
    ENUM_VARS,
    FAMILY_VARS,
    SEQ_VARS,
    VARIANTS,
    AnyTerm,
    BinOp,
    Builder,
    Diag,
    DiagPerm,
    DivLit,
    Dovetail,
    EnumExpr,
    EnumTerm,
    Expr,
    If,
    Interleave,
    Lit,
    Parity,
    Prepend,
    Row,
    SeqExpr,
    SeqTerm,
    TowerX,
    Var,
    XInf,
    YOf,
    ZOf,
)

__all__ = ["parse_seq", "parse_enum", "parse_term", "parse_family", "parse_file_text"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")

VARIABLES = frozenset({"i", "k", "a", "b"})
KEYWORDS = frozenset({"if", "then", "else", "div", "mod"})
EXPR_CALLS = {"eq": 2, "lt": 2, "bit": 2, "parity": 1}
SEQ_COMBINATORS = frozenset({"row", "diag", "diag_row", "diag_transversal", "z"})
ENUM_COMBINATORS = frozenset({"interleave", "prepend", "dovetail", "Y", "tower", "xinf"}) | set(BUILDER_NAMES)


class Token(NamedTuple):
    kind: str  # "nat", "name", "sym", "end"
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == m.start() or not (m.group(1) or m.group(2) or m.group(3)):
            break
        start = m.start(m.lastindex)
        skipped = text[pos:start]
        nl = skipped.count("\n")
        if nl:
            line += nl
            line_start = pos + skipped.rfind("\n") + 1
        col = start - line_start + 1
        if m.group(1):
            tokens.append(Token("nat", m.group(1), line, col))
        elif m.group(2):
            tokens.append(Token("name", m.group(2), line, col))
        else:
            ch = m.group(3)
            if ch not in "()[],+-*#":
                raise SDLSyntaxError(f"unexpected character {ch!r}", line, col)
            tokens.append(Token("sym", ch, line, col))
        pos = m.end()
    rest = text[pos:]
    nl = rest.count("\n")
    if nl:
        line += nl
        line_start = pos + rest.rfind("\n") + 1
    tokens.append(Token("end", "", line, len(text) - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    # -- token helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str, tok: Optional[Token] = None, cls=SDLSyntaxError):
        tok = tok or self.tok
        return cls(message, tok.line, tok.column)

    def advance(self) -> Token:
        tok = self.tok
        self.pos += 1
        return tok

    def at(self, text: str) -> bool:
        return self.tok.kind in ("sym", "name") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.advance()

    def nat(self) -> int:
        if self.tok.kind != "nat":
            raise self.error(f"expected a natural number, found {self.tok.text or 'end of input'!r}")
        return int(self.advance().text)

    def finish(self) -> None:
        if self.tok.kind != "end":
            raise self.error(f"unexpected trailing input {self.tok.text!r}")

    # -- terms
    def term(self, sort: str) -> AnyTerm:
        tok = self.tok
        if tok.kind == "name" and tok.text in SEQ_COMBINATORS | ENUM_COMBINATORS:
            want = "seq" if tok.text in SEQ_COMBINATORS else "enum"
            if want != sort:
                noun = {"seq": "sequence", "enum": "enumeration"}
                raise self.error(f"{tok.text!r} builds a {noun[want]} term where a {noun[sort]} term is expected")
            return self.seq_combinator() if sort == "seq" else self.enum_combinator()
        allowed = SEQ_VARS if sort == "seq" else ENUM_VARS
        body = self.expr(allowed)
        return SeqExpr(body) if sort == "seq" else EnumExpr(body)

    def seq_combinator(self) -> SeqTerm:
        name = self.advance().text
        self.expect("(")
        enum = self.term("enum")
        if name == "row":
            self.expect(",")
            result: SeqTerm = Row(enum, self.nat())
        elif name == "diag":
            result = Diag(enum)
        elif name == "z":
            result = ZOf(enum)
        else:
            self.expect(",")
            perm = self.perm()
            result = DiagPerm(enum, perm, "row" if name == "diag_row" else "transversal")
        self.expect(")")
        return result

    def enum_combinator(self) -> EnumTerm:
        tok = self.advance()
        name = tok.text
        if name in BUILDER_NAMES:
            params: tuple = ()
            if name == "hashrows":
                self.expect("(")
                params = (self.nat(),)
                self.expect(")")
            elif name == "doubly_periodic":
                self.expect("(")
                params = self.grid()
                self.expect(")")
            try:
                return Builder(name, params)
            except InvalidSpec as exc:
                raise self.error(str(exc), tok) from None
        self.expect("(")
        if name == "dovetail":
            result: EnumTerm = Dovetail(self.expr(FAMILY_VARS))
        elif name == "prepend":
            head = self.term("seq")
            self.expect(",")
            result = Prepend(head, self.term("enum"))
        elif name == "Y":
            enum = self.term("enum")
            self.expect(",")
            vtok = self.advance()
            if vtok.text not in VARIANTS:
                raise self.error(f"variant must be one of {VARIANTS}", vtok)
            result = YOf(enum, vtok.text)
        else:
            first = self.term("enum")
            self.expect(",")
            second = self.term("enum")
            if name == "interleave":
                result = Interleave(first, second)
            elif name == "xinf":
                result = XInf(first, second)
            else:
                self.expect(",")
                ltok = self.tok
                level = self.nat()
                if level < 1:
                    raise self.error("tower level must be at least 1", ltok)
                result = TowerX(first, second, level)
        self.expect(")")
        return result

    def grid(self) -> tuple:
        self.expect("[")
        rows = [self.bit_row()]
        while self.at(","):
            self.advance()
            rows.append(self.bit_row())
        self.expect("]")
        return tuple(rows)

    def bit_row(self) -> tuple:
        self.expect("[")
        bits = [self.nat()]
        while self.at(","):
            self.advance()
            bits.append(self.nat())
        self.expect("]")
        return tuple(bits)

    def perm(self) -> Perm:
        result = self.perm_factor()
        while self.at("*"):
            self.advance()
            result = compose_perm(self.perm_factor(), result)
        return result

    def perm_factor(self) -> Perm:
        tok = self.tok
        try:
            if self.at("id"):
                self.advance()
                return IDENTITY
            if self.at("#"):
                self.advance()
                return unrank_perm(self.nat())
            if self.at("t"):
                self.advance()
                self.expect("(")
                a = self.nat()
                self.expect(",")
                b = self.nat()
                self.expect(")")
                return transposition(a, b)
            if self.at("["):
                self.advance()
                entries = []
                if not self.at("]"):
                    entries.append(self.nat())
                    while self.at(","):
                        self.advance()
                        entries.append(self.nat())
                self.expect("]")
                return Perm.from_table(entries)
        except SDLSyntaxError:
            raise
        except CantorkitError as exc:
            raise self.error(str(exc), tok) from None
        raise self.error("expected a permutation (id, t(a,b), #n or [..])")

    # -- expressions
    def expr(self, allowed: frozenset) -> Expr:
        if self.at("if"):
            self.advance()
            cond = self.expr(allowed)
            self.expect("then")
            then = self.expr(allowed)
            self.expect("else")
            return If(cond, then, self.expr(allowed))
        return self.sum(allowed)

    def sum(self, allowed) -> Expr:
        left = self.product(allowed)
        while self.at("+") or self.at("-"):
            op = "add" if self.advance().text == "+" else "sub"
            left = BinOp(op, left, self.product(allowed))
        return left

    def product(self, allowed) -> Expr:
        left = self.atom(allowed)
        while True:
            if self.at("*"):
                self.advance()
                left = BinOp("mul", left, self.atom(allowed))
            elif self.at("div") or self.at("mod"):
                op = self.advance().text
                tok = self.tok
                if tok.kind != "nat":
                    raise self.error(f"{op} needs a positive integer literal divisor")
                divisor = self.nat()
                if divisor == 0:
                    raise self.error(f"{op} by zero", tok, ZeroDivisor)
                left = DivLit(op, left, divisor)
            else:
                return left

    def atom(self, allowed) -> Expr:
        tok = self.tok
        if tok.kind == "nat":
            return Lit(self.nat())
        if self.at("("):
            self.advance()
            inner = self.expr(allowed)
            self.expect(")")
            return inner
        if tok.kind == "name":
            if tok.text in VARIABLES:
                self.advance()
                if tok.text not in allowed:
                    raise self.error(f"variable {tok.text!r} is not bound here", tok, UnboundVariable)
                return Var(tok.text)
            if tok.text in EXPR_CALLS:
                self.advance()
                self.expect("(")
                args = [self.expr(allowed)]
                for _ in range(EXPR_CALLS[tok.text] - 1):
                    self.expect(",")
                    args.append(self.expr(allowed))
                self.expect(")")
                if tok.text == "parity":
                    return Parity(args[0])
                return BinOp(tok.text, args[0], args[1])
            if tok.text in KEYWORDS or tok.text in SEQ_COMBINATORS | ENUM_COMBINATORS:
                raise self.error(f"{tok.text!r} cannot appear inside an arithmetic expression")
            raise self.error(f"unknown name {tok.text!r}", tok, UnboundVariable)
        raise self.error(f"unexpected {tok.text or 'end of input'!r}")


def parse_term(text: str, sort: str) -> AnyTerm:
    if sort not in ("seq", "enum"):
        raise ValueError(f"sort must be 'seq' or 'enum', not {sort!r}")
    p = _Parser(text)
    term = p.term(sort)
    p.finish()
    return term


def parse_seq(text: str) -> SeqTerm:
    return parse_term(text, "seq")


def parse_enum(text: str) -> EnumTerm:
    return parse_term(text, "enum")


def parse_family(text: str) -> Expr:
    """Parse a dovetail family body over ``a``, ``b`` and ``i``."""
    p = _Parser(text)
    body = p.expr(FAMILY_VARS)
    p.finish()
    return body


def parse_file_text(text: str) -> AnyTerm:
    """Parse an SDL file: a ``seq:`` or ``enum:`` header line, then the term."""
    stripped = text.lstrip()
    header, _, rest = stripped.partition(":")
    header = header.strip()
    if header not in ("seq", "enum") or "\n" in header:
        raise SDLSyntaxError("SDL files start with a 'seq:' or 'enum:' header", 1, 1)
    offset = text[: len(text) - len(stripped)].count("\n")
    try:
        return parse_term(rest, header)
    except SDLSyntaxError as exc:
        # re-anchor positions to the file; the header sits on the first line
        line = exc.line + offset
        col = exc.column + (len(header) + 1 if exc.line == 1 else 0)
        raise type(exc)(exc.reason, line, col) from None
