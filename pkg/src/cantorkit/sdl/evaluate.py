"""Evaluation of SDL terms.

Terms are compiled once into plain Python callables (cached on the node) and
then evaluated many times.  Arithmetic bodies become generated ``lambda``
source; combinators become closures over their compiled children.  Caching
is benign under races: two threads may both compile, and either result is
correct.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Mapping

from ..numbering import hashrows_bit, unpair
from ..permutations import invert_perm, unrank_perm
from .terms import (
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

__all__ = ["eval_expr", "eval_seq", "eval_enum", "row", "prefix", "seq_fn", "enum_fn", "tower_w"]

SeqFn = Callable[[int], int]
EnumFn = Callable[[int, int], int]


def _sub(x: int, y: int) -> int:
    return x - y if x > y else 0


def eval_expr(e: Expr, env: Mapping[str, int]) -> int:
    """Reference tree-walking evaluator (slow; used as fallback and oracle)."""
    if isinstance(e, Lit):
        return e.value
    if isinstance(e, Var):
        return env[e.name]
    if isinstance(e, BinOp):
        x = eval_expr(e.left, env)
        y = eval_expr(e.right, env)
        op = e.op
        if op == "add":
            return x + y
        if op == "sub":
            return _sub(x, y)
        if op == "mul":
            return x * y
        if op == "eq":
            return int(x == y)
        if op == "lt":
            return int(x < y)
        if op == "bit":
            return (x >> y) & 1
        raise ValueError(f"unknown operator {op!r}")
    if isinstance(e, DivLit):
        x = eval_expr(e.operand, env)
        return x // e.divisor if e.op == "div" else x % e.divisor
    if isinstance(e, If):
        return eval_expr(e.then if eval_expr(e.cond, env) else e.orelse, env)
    if isinstance(e, Parity):
        return eval_expr(e.operand, env) & 1
    raise TypeError(f"not an SDL expression: {e!r}")


def _source(e: Expr) -> str:
    if isinstance(e, Lit):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, BinOp):
        x, y = _source(e.left), _source(e.right)
        return {
            "add": f"({x} + {y})",
            "sub": f"_sub({x}, {y})",
            "mul": f"({x} * {y})",
            "eq": f"(1 if {x} == {y} else 0)",
            "lt": f"(1 if {x} < {y} else 0)",
            "bit": f"(({x} >> {y}) & 1)",
        }[e.op]
    if isinstance(e, DivLit):
        op = "//" if e.op == "div" else "%"
        return f"({_source(e.operand)} {op} {e.divisor})"
    if isinstance(e, If):
        return f"({_source(e.then)} if {_source(e.cond)} else {_source(e.orelse)})"
    if isinstance(e, Parity):
        return f"({_source(e.operand)} & 1)"
    raise TypeError(f"not an SDL expression: {e!r}")


def compile_expr(e: Expr, params: tuple[str, ...]) -> Callable[..., int]:
    """Compile an arithmetic body into ``lambda *params: bit``."""
    try:
        src = f"lambda {', '.join(params)}: {_source(e)} & 1"
        return eval(src, {"_sub": _sub, "__builtins__": {}})  # noqa: S307 - source is generated from the AST
    except (RecursionError, SyntaxError, MemoryError):
        # pathological nesting depth: fall back to the tree walker
        def fn(*args):
            return eval_expr(e, dict(zip(params, args))) & 1

        return fn


def seq_fn(t: SeqTerm) -> SeqFn:
    fn = t._fn
    if fn is None:
        fn = _compile_seq(t)
        object.__setattr__(t, "_fn", fn)
    return fn


def enum_fn(t: EnumTerm) -> EnumFn:
    fn = t._fn
    if fn is None:
        fn = _compile_enum(t)
        object.__setattr__(t, "_fn", fn)
    return fn


def _compile_seq(t: SeqTerm) -> SeqFn:
    if isinstance(t, SeqExpr):
        return compile_expr(t.body, ("i",))
    if isinstance(t, Row):
        g = enum_fn(t.enum)
        k = t.k
        return lambda i: g(k, i)
    if isinstance(t, Diag):
        g = enum_fn(t.enum)
        return lambda i: 1 - g(i, i)
    if isinstance(t, DiagPerm):
        g = enum_fn(t.enum)
        if t.variant == "row":
            p = t.perm
            return lambda i: 1 - g(i, p(i))
        inv = invert_perm(t.perm)
        return lambda j: 1 - g(inv(j), j)
    if isinstance(t, ZOf):
        g = enum_fn(t.enum)
        return lambda i: g(i, unrank_perm(i)(i))
    raise TypeError(f"not a sequence term: {t!r}")


@lru_cache(maxsize=8192)
def _inverse_of_rank(k: int):
    return invert_perm(unrank_perm(k))


def tower_w(x1: EnumFn) -> Callable[[int, int], int]:
    """Return ``w(n, i)``, the level-``n`` tower diagonal over the base ``x1``.

    Unfolds ``w_n(i) = 1 - w_{n-1-i}(i)`` while ``i <= n - 2`` and finishes
    with ``1 - x1(i - n + 1, i)``; at most ``n`` steps, no recursion.
    """

    def w(n: int, i: int) -> int:
        flips = 0
        while True:
            flips ^= 1
            if i <= n - 2:
                n = n - 1 - i
            else:
                return flips ^ x1(i - n + 1, i)

    return w


def _builder_fn(t: Builder) -> EnumFn:
    name = t.name
    if name == "zeros":
        return lambda k, i: 0
    if name == "ones":
        return lambda k, i: 1
    if name == "identity":
        return lambda k, i: 1 if k == i else 0
    if name == "binary_naturals":
        return lambda k, i: (k >> i) & 1
    if name == "hashrows":
        salt = t.params[0]
        return lambda k, i: hashrows_bit(salt, k, i)
    if name == "doubly_periodic":
        grid = t.params
        r, c = len(grid), len(grid[0])
        return lambda k, i: grid[k % r][i % c]
    if name == "counterexample":
        # identity below the first row; row 0 is the indicator of position 1
        return lambda k, i: (1 if i == 1 else 0) if k == 0 else (1 if k == i else 0)
    raise ValueError(f"unknown builder {name!r}")


def _compile_enum(t: EnumTerm) -> EnumFn:
    if isinstance(t, EnumExpr):
        return compile_expr(t.body, ("k", "i"))
    if isinstance(t, Builder):
        return _builder_fn(t)
    if isinstance(t, Interleave):
        g1, g2 = enum_fn(t.first), enum_fn(t.second)
        return lambda k, i: g2(k >> 1, i) if k & 1 else g1(k >> 1, i)
    if isinstance(t, Prepend):
        s, g = seq_fn(t.head), enum_fn(t.tail)
        return lambda k, i: g(k - 1, i) if k else s(i)
    if isinstance(t, Dovetail):
        f = compile_expr(t.family, ("a", "b", "i"))
        return lambda n, i: f(*unpair(n), i)
    if isinstance(t, YOf):
        g = enum_fn(t.enum)
        if t.variant == "row":
            return lambda k, i: 1 - g(i, unrank_perm(k)(i))

        def transversal(k, j):
            return 1 - g(_inverse_of_rank(k)(j), j)

        return transversal
    if isinstance(t, TowerX):
        x1 = enum_fn(Interleave(t.base, t.extra))
        w = tower_w(x1)
        n = t.level
        return lambda j, i: w(n - 1 - j, i) if j < n - 1 else x1(j - n + 1, i)
    if isinstance(t, XInf):
        x1 = enum_fn(Interleave(t.base, t.extra))
        w = tower_w(x1)
        return lambda k, i: x1(k >> 1, i) if k & 1 else w((k >> 1) + 1, i)
    raise TypeError(f"not an enumeration term: {t!r}")


def eval_seq(t: SeqTerm, i: int) -> int:
    return seq_fn(t)(i)


def eval_enum(e: EnumTerm, k: int, i: int) -> int:
    return enum_fn(e)(k, i)


def row(e: EnumTerm, k: int) -> SeqTerm:
    return Row(e, k)


def prefix(t: SeqTerm, n: int) -> list[int]:
    f = seq_fn(t)
    return [f(i) for i in range(n)]
