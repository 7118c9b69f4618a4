"""Canonical pretty-printer: ``parse(show(t)) == t`` for every term."""

from __future__ import annotations

from ..permutations import format_perm
from .terms import (
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
)

_INFIX = {"add": "+", "sub": "-", "mul": "*"}


def show_expr(e: Expr) -> str:
    if isinstance(e, Lit):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Parity):
        return f"parity({show_expr(e.operand)})"
    if isinstance(e, If):
        return f"if {show_expr(e.cond)} then {show_expr(e.then)} else {show_expr(e.orelse)}"
    if isinstance(e, DivLit):
        return f"{_operand(e.operand)} {e.op} {e.divisor}"
    if isinstance(e, BinOp):
        if e.op in _INFIX:
            return f"{_operand(e.left)} {_INFIX[e.op]} {_operand(e.right)}"
        return f"{e.op}({show_expr(e.left)}, {show_expr(e.right)})"
    raise TypeError(f"not an SDL expression: {e!r}")


def _operand(e: Expr) -> str:
    text = show_expr(e)
    compound = isinstance(e, (If, DivLit)) or (isinstance(e, BinOp) and e.op in _INFIX)
    return f"({text})" if compound else text


def show(t) -> str:
    if isinstance(t, (SeqExpr, EnumExpr)):
        return show_expr(t.body)
    if isinstance(t, Row):
        return f"row({show(t.enum)}, {t.k})"
    if isinstance(t, Diag):
        return f"diag({show(t.enum)})"
    if isinstance(t, DiagPerm):
        return f"diag_{t.variant}({show(t.enum)}, {format_perm(t.perm)})"
    if isinstance(t, ZOf):
        return f"z({show(t.enum)})"
    if isinstance(t, Builder):
        if t.name == "hashrows":
            return f"hashrows({t.params[0]})"
        if t.name == "doubly_periodic":
            grid = ", ".join("[" + ", ".join(map(str, r)) + "]" for r in t.params)
            return f"doubly_periodic([{grid}])"
        return t.name
    if isinstance(t, Interleave):
        return f"interleave({show(t.first)}, {show(t.second)})"
    if isinstance(t, Prepend):
        return f"prepend({show(t.head)}, {show(t.tail)})"
    if isinstance(t, Dovetail):
        return f"dovetail({show_expr(t.family)})"
    if isinstance(t, YOf):
        return f"Y({show(t.enum)}, {t.variant})"
    if isinstance(t, TowerX):
        return f"tower({show(t.base)}, {show(t.extra)}, {t.level})"
    if isinstance(t, XInf):
        return f"xinf({show(t.base)}, {show(t.extra)})"
    if isinstance(t, Expr):
        return show_expr(t)
    raise TypeError(f"not an SDL term: {t!r}")


def sort_of(t) -> str:
    from .terms import SeqTerm

    return "seq" if isinstance(t, SeqTerm) else "enum"


def show_file(t) -> str:
    return f"{sort_of(t)}: {show(t)}\n"
