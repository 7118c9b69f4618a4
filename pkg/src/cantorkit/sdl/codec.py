"""Injective Gödel numbering of SDL terms.

A term is serialised pre-order into bytes: one tag byte per node followed by
its operands (children first-to-last, naturals as LEB128 varints).  The byte
string ``d_0 .. d_{L-1}`` then maps to the natural ``sum (d_j + 1) 256**j``
(bijective base 256), so every byte string has exactly one code and the
empty string has code 0.  Decoding re-validates every invariant and rejects
anything that is not the image of a well-formed term.  The full tag table is
in ``docs/codec.md``.
"""

from __future__ import annotations

from ..errors import CantorkitError, InvalidCode
from ..permutations import rank_perm, unrank_perm
from .terms import (
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
    Expr,
    If,
    Interleave,
    Lit,
    Parity,
    Prepend,
    Row,
    SeqExpr,
    TowerX,
    Var,
    XInf,
    YOf,
    ZOf,
    check_builder,
)

__all__ = ["encode_term", "decode_term", "term_to_bytes", "bytes_to_term", "bytes_to_nat", "nat_to_bytes"]

# expression tags
LIT, VAR_I, VAR_K, VAR_A, VAR_B = 0x01, 0x02, 0x03, 0x04, 0x05
ADD, SUB, MUL, DIV, MOD, EQ, LT, IF, BIT, PARITY = range(0x06, 0x10)
# sequence-term tags
SEQ_EXPR, ROW, DIAG, DIAG_ROW, DIAG_TRANSVERSAL, Z_OF = range(0x20, 0x26)
# enumeration-term tags
ENUM_EXPR, ZEROS, ONES, IDENTITY, BINARY_NATURALS, HASHROWS, DOUBLY_PERIODIC, COUNTEREXAMPLE = range(0x30, 0x38)
INTERLEAVE, PREPEND, DOVETAIL, Y_OF, TOWER, XINF = range(0x38, 0x3E)

_VAR_TAG = {"i": VAR_I, "k": VAR_K, "a": VAR_A, "b": VAR_B}
_TAG_VAR = {v: k for k, v in _VAR_TAG.items()}
_BIN_TAG = {"add": ADD, "sub": SUB, "mul": MUL, "eq": EQ, "lt": LT, "bit": BIT}
_TAG_BIN = {v: k for k, v in _BIN_TAG.items()}
_PLAIN_BUILDERS = {"zeros": ZEROS, "ones": ONES, "identity": IDENTITY, "binary_naturals": BINARY_NATURALS,
                   "counterexample": COUNTEREXAMPLE}
_TAG_PLAIN = {v: k for k, v in _PLAIN_BUILDERS.items()}


def _varint(n: int, out: bytearray) -> None:
    while True:
        low = n & 0x7F
        n >>= 7
        if n:
            out.append(low | 0x80)
        else:
            out.append(low)
            return


def _put_expr(e: Expr, out: bytearray) -> None:
    if isinstance(e, Lit):
        out.append(LIT)
        _varint(e.value, out)
    elif isinstance(e, Var):
        out.append(_VAR_TAG[e.name])
    elif isinstance(e, BinOp):
        out.append(_BIN_TAG[e.op])
        _put_expr(e.left, out)
        _put_expr(e.right, out)
    elif isinstance(e, DivLit):
        out.append(DIV if e.op == "div" else MOD)
        _put_expr(e.operand, out)
        _varint(e.divisor, out)
    elif isinstance(e, If):
        out.append(IF)
        _put_expr(e.cond, out)
        _put_expr(e.then, out)
        _put_expr(e.orelse, out)
    elif isinstance(e, Parity):
        out.append(PARITY)
        _put_expr(e.operand, out)
    else:
        raise TypeError(f"not an SDL expression: {e!r}")


def _put_term(t, out: bytearray) -> None:
    if isinstance(t, SeqExpr):
        out.append(SEQ_EXPR)
        _put_expr(t.body, out)
    elif isinstance(t, Row):
        out.append(ROW)
        _put_term(t.enum, out)
        _varint(t.k, out)
    elif isinstance(t, Diag):
        out.append(DIAG)
        _put_term(t.enum, out)
    elif isinstance(t, DiagPerm):
        out.append(DIAG_ROW if t.variant == "row" else DIAG_TRANSVERSAL)
        _put_term(t.enum, out)
        _varint(rank_perm(t.perm), out)
    elif isinstance(t, ZOf):
        out.append(Z_OF)
        _put_term(t.enum, out)
    elif isinstance(t, EnumExpr):
        out.append(ENUM_EXPR)
        _put_expr(t.body, out)
    elif isinstance(t, Builder):
        if t.name == "hashrows":
            out.append(HASHROWS)
            _varint(t.params[0], out)
        elif t.name == "doubly_periodic":
            out.append(DOUBLY_PERIODIC)
            _varint(len(t.params) - 1, out)
            _varint(len(t.params[0]) - 1, out)
            for r in t.params:
                out.extend(r)
        else:
            out.append(_PLAIN_BUILDERS[t.name])
    elif isinstance(t, Interleave):
        out.append(INTERLEAVE)
        _put_term(t.first, out)
        _put_term(t.second, out)
    elif isinstance(t, Prepend):
        out.append(PREPEND)
        _put_term(t.head, out)
        _put_term(t.tail, out)
    elif isinstance(t, Dovetail):
        out.append(DOVETAIL)
        _put_expr(t.family, out)
    elif isinstance(t, YOf):
        out.append(Y_OF)
        _put_term(t.enum, out)
        out.append(VARIANTS.index(t.variant))
    elif isinstance(t, TowerX):
        out.append(TOWER)
        _put_term(t.base, out)
        _put_term(t.extra, out)
        _varint(t.level - 1, out)
    elif isinstance(t, XInf):
        out.append(XINF)
        _put_term(t.base, out)
        _put_term(t.extra, out)
    else:
        raise TypeError(f"not an SDL term: {t!r}")


def term_to_bytes(t: AnyTerm) -> bytes:
    out = bytearray()
    _put_term(t, out)
    return bytes(out)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def byte(self) -> int:
        if self.pos >= len(self.data):
            raise InvalidCode("truncated term")
        b = self.data[self.pos]
        self.pos += 1
        return b

    def varint(self) -> int:
        n, shift = 0, 0
        while True:
            b = self.byte()
            n |= (b & 0x7F) << shift
            shift += 7
            if not b & 0x80:
                if b == 0 and shift > 7:
                    raise InvalidCode("non-minimal varint")
                return n

    def expr(self, allowed: frozenset) -> Expr:
        tag = self.byte()
        if tag == LIT:
            return Lit(self.varint())
        if tag in _TAG_VAR:
            name = _TAG_VAR[tag]
            if name not in allowed:
                raise InvalidCode(f"variable {name!r} is not bound here")
            return Var(name)
        if tag in _TAG_BIN:
            left = self.expr(allowed)
            return BinOp(_TAG_BIN[tag], left, self.expr(allowed))
        if tag in (DIV, MOD):
            operand = self.expr(allowed)
            divisor = self.varint()
            if divisor == 0:
                raise InvalidCode("zero divisor")
            return DivLit("div" if tag == DIV else "mod", operand, divisor)
        if tag == IF:
            cond = self.expr(allowed)
            then = self.expr(allowed)
            return If(cond, then, self.expr(allowed))
        if tag == PARITY:
            return Parity(self.expr(allowed))
        raise InvalidCode(f"byte {tag:#04x} is not an expression tag")

    def seq(self):
        tag = self.byte()
        if tag == SEQ_EXPR:
            return SeqExpr(self.expr(SEQ_VARS))
        if tag == ROW:
            enum = self.enum()
            return Row(enum, self.varint())
        if tag == DIAG:
            return Diag(self.enum())
        if tag in (DIAG_ROW, DIAG_TRANSVERSAL):
            enum = self.enum()
            perm = unrank_perm(self.varint())
            return DiagPerm(enum, perm, "row" if tag == DIAG_ROW else "transversal")
        if tag == Z_OF:
            return ZOf(self.enum())
        raise InvalidCode(f"byte {tag:#04x} is not a sequence-term tag")

    def enum(self):
        tag = self.byte()
        if tag == ENUM_EXPR:
            return EnumExpr(self.expr(ENUM_VARS))
        if tag in _TAG_PLAIN:
            return Builder(_TAG_PLAIN[tag])
        if tag == HASHROWS:
            salt = self.varint()
            try:
                check_builder("hashrows", (salt,))
            except CantorkitError as exc:
                raise InvalidCode(str(exc)) from None
            return Builder("hashrows", (salt,))
        if tag == DOUBLY_PERIODIC:
            rows = self.varint() + 1
            cols = self.varint() + 1
            grid = []
            for _ in range(rows):
                r = tuple(self.byte() for _ in range(cols))
                if any(b > 1 for b in r):
                    raise InvalidCode("grid entries must be bits")
                grid.append(r)
            return Builder("doubly_periodic", tuple(grid))
        if tag == INTERLEAVE:
            first = self.enum()
            return Interleave(first, self.enum())
        if tag == PREPEND:
            head = self.seq()
            return Prepend(head, self.enum())
        if tag == DOVETAIL:
            return Dovetail(self.expr(FAMILY_VARS))
        if tag == Y_OF:
            enum = self.enum()
            v = self.byte()
            if v >= len(VARIANTS):
                raise InvalidCode("unknown diagonal variant")
            return YOf(enum, VARIANTS[v])
        if tag == TOWER:
            base = self.enum()
            extra = self.enum()
            return TowerX(base, extra, self.varint() + 1)
        if tag == XINF:
            base = self.enum()
            return XInf(base, self.enum())
        raise InvalidCode(f"byte {tag:#04x} is not an enumeration-term tag")


_SEQ_TAGS = frozenset({SEQ_EXPR, ROW, DIAG, DIAG_ROW, DIAG_TRANSVERSAL, Z_OF})


def bytes_to_term(data: bytes) -> AnyTerm:
    if not data:
        raise InvalidCode("empty byte string encodes no term")
    r = _Reader(data)
    try:
        term = r.seq() if data[0] in _SEQ_TAGS else r.enum()
    except RecursionError:
        raise InvalidCode("term nesting too deep to decode") from None
    if r.pos != len(data):
        raise InvalidCode(f"{len(data) - r.pos} trailing bytes after a complete term")
    return term


def bytes_to_nat(data: bytes) -> int:
    """Bijective base-256 value: digit ``d`` stands for ``d + 1``."""
    length = len(data)
    return int.from_bytes(data, "little") + ((1 << (8 * length)) - 1) // 255


def nat_to_bytes(n: int) -> bytes:
    if n < 0:
        raise InvalidCode("codes are natural numbers")
    # smallest L with n < (256**(L+1) - 1) / 255; start just below the estimate
    length = max(0, n.bit_length() // 8 - 1)
    while n >= ((1 << (8 * (length + 1))) - 1) // 255:
        length += 1
    base = ((1 << (8 * length)) - 1) // 255
    return (n - base).to_bytes(length, "little")


def encode_term(t: AnyTerm) -> int:
    return bytes_to_nat(term_to_bytes(t))


def decode_term(code: int) -> AnyTerm:
    return bytes_to_term(nat_to_bytes(code))
