"""Exact symbolic evaluation of SDL terms over eventually quasi-linear functions.

A :class:`QuasiLinear` value ``f`` describes a function ``N -> N`` by

* a finite prefix ``pre`` (the values at ``0 .. start-1``), and
* for ``i >= start``, writing ``i - start = period*q + r``,
  ``f(i) = offsets[r] + slopes[r] * q``.

This class is closed under every SDL operation except the product of two
growing functions, and contains every eventually periodic bit sequence (all
slopes zero).  Operations that would leave the class, or blow past the size
caps, raise :class:`NotEventuallyPeriodic`; nothing is ever approximated.

:func:`abstract_seq` runs a sequence term on the identity function and
returns the exact quasi-linear description of its bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Callable, Mapping, Sequence

from ..numbering import unpair
from ..errors import NotEventuallyPeriodic
from ..permutations import Perm, invert_perm, unrank_perm
from ..sdl.evaluate import _sub
from ..sdl.terms import (
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
    unfold_tower,
)

MAX_START = 1 << 16
MAX_PERIOD = 1 << 14


@dataclass(frozen=True)
class QuasiLinear:
    start: int
    pre: tuple
    period: int
    offsets: tuple
    slopes: tuple

    def __call__(self, i: int) -> int:
        if i < self.start:
            return self.pre[i]
        q, r = divmod(i - self.start, self.period)
        return self.offsets[r] + self.slopes[r] * q

    def constant(self):
        """The single value taken everywhere, or ``None``."""
        if any(self.slopes):
            return None
        values = set(self.pre) | set(self.offsets)
        return values.pop() if len(values) == 1 else None

    @property
    def bounded(self) -> bool:
        return not any(self.slopes)


def _check(start: int, period: int) -> None:
    if start > MAX_START or period > MAX_PERIOD:
        raise NotEventuallyPeriodic(
            f"symbolic form too large (preperiod {start}, period {period}); refusing to certify"
        )


def const(c: int) -> QuasiLinear:
    return QuasiLinear(0, (), 1, (c,), (0,))


IDENT = QuasiLinear(0, (), 1, (0,), (1,))


def realign(f: QuasiLinear, start: int, period: int) -> QuasiLinear:
    """Same function, described with a later ``start`` and a multiple of the period."""
    if start == f.start and period == f.period:
        return f
    assert start >= f.start and period % f.period == 0
    _check(start, period)
    ratio = period // f.period
    pre = tuple(f(i) for i in range(start))
    offsets, slopes = [], []
    for r in range(period):
        q0, cls = divmod(start - f.start + r, f.period)
        offsets.append(f.offsets[cls] + f.slopes[cls] * q0)
        slopes.append(f.slopes[cls] * ratio)
    return QuasiLinear(start, pre, period, tuple(offsets), tuple(slopes))


def align(fs: Sequence[QuasiLinear], period_factor: int = 1) -> list[QuasiLinear]:
    start = max(f.start for f in fs)
    period = lcm(*(f.period for f in fs)) * period_factor
    _check(start, period)
    return [realign(f, start, period) for f in fs]


ClassOp = Callable[..., tuple]


def combine(fs: Sequence[QuasiLinear], pointwise: Callable[..., int], classwise: ClassOp,
            period_factor: int = 1) -> QuasiLinear:
    """Apply an operation to aligned operands.

    ``classwise`` receives one ``(offset, slope)`` pair per operand for a
    residue class and returns ``(offset, slope, q_needed)``; a positive
    ``q_needed`` means the class only settles after that many periods, so
    the start is pushed back and the classes are recomputed.
    """
    gs = align(fs, period_factor)
    for _ in range(3):
        start, period = gs[0].start, gs[0].period
        out = [classwise(*((g.offsets[r], g.slopes[r]) for g in gs)) for r in range(period)]
        need = max(o[2] for o in out)
        if need == 0:
            pre = tuple(pointwise(*(g(i) for g in gs)) for i in range(start))
            return QuasiLinear(start, pre, period, tuple(o[0] for o in out), tuple(o[1] for o in out))
        gs = [realign(g, start + need * period, period) for g in gs]
    raise AssertionError("class did not settle after pushing the start back")  # pragma: no cover


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


# ------------------------------------------------------------------ operations


def add(f, g):
    return combine([f, g], lambda x, y: x + y, lambda a, b: (a[0] + b[0], a[1] + b[1], 0))


def _sub_class(a, b):
    do, ds = a[0] - b[0], a[1] - b[1]
    if ds > 0:
        return (do, ds, 0) if do >= 0 else (0, 0, _ceil_div(-do, ds))
    if ds < 0:
        return (0, 0, 0) if do <= 0 else (0, 0, _ceil_div(do, -ds))
    return (max(do, 0), 0, 0)


def sub(f, g):
    return combine([f, g], _sub, _sub_class)


def _mul_class(a, b):
    if a[1] and b[1]:
        raise NotEventuallyPeriodic("product of two unbounded quantities is not quasi-linear")
    return (a[0] * b[0], a[1] * b[0] + b[1] * a[0], 0)


def mul(f, g):
    return combine([f, g], lambda x, y: x * y, _mul_class)


def _eq_class(a, b):
    if a[1] == b[1]:
        return (int(a[0] == b[0]), 0, 0)
    q, rem = divmod(b[0] - a[0], a[1] - b[1])
    return (0, 0, q + 1) if rem == 0 and q >= 0 else (0, 0, 0)


def eq(f, g):
    return combine([f, g], lambda x, y: int(x == y), _eq_class)


def _lt_class(a, b):
    gap, dslope = b[0] - a[0], b[1] - a[1]  # a < b  iff  gap + dslope*q > 0
    if dslope == 0:
        return (int(gap > 0), 0, 0)
    if dslope > 0:
        return (1, 0, 0) if gap > 0 else (0, 0, (-gap) // dslope + 1)
    return (0, 0, 0) if gap <= 0 else (0, 0, _ceil_div(gap, -dslope))


def lt(f, g):
    return combine([f, g], lambda x, y: int(x < y), _lt_class)


def div(f, c: int):
    return combine([f], lambda x: x // c, lambda a: (a[0] // c, a[1] // c, 0), period_factor=c)


def mod(f, c: int):
    return combine([f], lambda x: x % c, lambda a: (a[0] % c, 0, 0), period_factor=c)


def parity(f):
    return mod(f, 2)


def _if_class(c, a, b):
    if c[1]:
        return (a[0], a[1], 0) if c[0] else (0, 0, 1)
    return (a[0], a[1], 0) if c[0] else (b[0], b[1], 0)


def if_(c, a, b):
    return combine([c, a, b], lambda x, y, z: y if x else z, _if_class)


def _bit_class(n, j):
    (on, sn), (oj, sj) = n, j
    if sj == 0:
        # refinement guarantees 2**(oj+1) divides sn
        return ((on >> oj) & 1, 0, 0)
    # j grows without bound: the bit is eventually 0 once 2**j exceeds n
    # and keeps pace with its growth (2**j >= sn makes the step inductive)
    q = 0
    while True:
        e = oj + sj * q
        if e >= (on + sn * q).bit_length() and (sn == 0 or e >= (sn - 1).bit_length()):
            return (0, 0, q)
        q += 1


def bit(n, j):
    n, j = align([n, j])
    factor = 1
    for r in range(n.period):
        if n.slopes[r] and not j.slopes[r]:
            factor = max(factor, 1 << min(j.offsets[r] + 1, 64))
    if factor > MAX_PERIOD:
        raise NotEventuallyPeriodic("bit index too large for a certified period")
    return combine([n, j], lambda x, y: (x >> y) & 1, _bit_class, period_factor=factor)


def lookup(rows: QuasiLinear, cols: QuasiLinear, grid: Sequence[Sequence[int]]) -> QuasiLinear:
    """``grid[rows(i)][cols(i)]`` for bounded index functions."""

    def cls(a, b):
        if a[1] or b[1]:
            raise NotEventuallyPeriodic("grid index is unbounded")
        return (grid[a[0]][b[0]], 0, 0)

    return combine([rows, cols], lambda x, y: grid[x][y], cls)


def compose(f: QuasiLinear, g: QuasiLinear) -> QuasiLinear:
    """``i -> f(g(i))``."""
    g = realign(g, g.start, g.period * f.period)
    for _ in range(3):
        need = 0
        for r in range(g.period):
            o, s = g.offsets[r], g.slopes[r]
            if s and o < f.start:
                need = max(need, _ceil_div(f.start - o, s))
        if need == 0:
            break
        g = realign(g, g.start + need * g.period, g.period)
    offsets, slopes = [], []
    for r in range(g.period):
        o, s = g.offsets[r], g.slopes[r]
        if s == 0:
            offsets.append(f(o))
            slopes.append(0)
            continue
        q0, rf = divmod(o - f.start, f.period)
        step = s // f.period
        offsets.append(f.offsets[rf] + f.slopes[rf] * q0)
        slopes.append(f.slopes[rf] * step)
    pre = tuple(f(g(i)) for i in range(g.start))
    return QuasiLinear(g.start, pre, g.period, tuple(offsets), tuple(slopes))


def perm_function(p: Perm) -> QuasiLinear:
    m = p.bound
    return QuasiLinear(m, p.table, 1, (m,), (1,))


# Ranks >= 6 have bound <= rank (block offsets grow factorially past bound 4),
# so unrank_perm(i) fixes i from there on.
_SIGMA_START = 6
SELF_IMAGE = QuasiLinear(_SIGMA_START, tuple(unrank_perm(i)(i) for i in range(_SIGMA_START)), 1,
                         (_SIGMA_START,), (1,))


# ------------------------------------------------------------- term semantics


class _Interpreter:
    def __init__(self):
        self.memo: dict = {}

    def expr(self, e: Expr, env: Mapping[str, QuasiLinear]) -> QuasiLinear:
        if isinstance(e, Lit):
            return const(e.value)
        if isinstance(e, Var):
            return env[e.name]
        if isinstance(e, BinOp):
            x, y = self.expr(e.left, env), self.expr(e.right, env)
            return {"add": add, "sub": sub, "mul": mul, "eq": eq, "lt": lt, "bit": bit}[e.op](x, y)
        if isinstance(e, DivLit):
            x = self.expr(e.operand, env)
            return div(x, e.divisor) if e.op == "div" else mod(x, e.divisor)
        if isinstance(e, If):
            c = self.expr(e.cond, env)
            v = c.constant()
            if v is not None:
                return self.expr(e.then if v else e.orelse, env)
            return if_(c, self.expr(e.then, env), self.expr(e.orelse, env))
        if isinstance(e, Parity):
            return parity(self.expr(e.operand, env))
        raise TypeError(f"not an SDL expression: {e!r}")

    def seq(self, t: SeqTerm, i: QuasiLinear) -> QuasiLinear:
        key = ("s", t, i)
        if key not in self.memo:
            self.memo[key] = self._seq(t, i)
        return self.memo[key]

    def enum(self, t: EnumTerm, k: QuasiLinear, i: QuasiLinear) -> QuasiLinear:
        key = ("e", t, k, i)
        if key not in self.memo:
            self.memo[key] = self._enum(t, k, i)
        return self.memo[key]

    def _seq(self, t, i):
        one = const(1)
        if isinstance(t, SeqExpr):
            return parity(self.expr(t.body, {"i": i}))
        if isinstance(t, Row):
            return self.enum(t.enum, const(t.k), i)
        if isinstance(t, Diag):
            return sub(one, self.enum(t.enum, i, i))
        if isinstance(t, DiagPerm):
            if t.variant == "row":
                return sub(one, self.enum(t.enum, i, compose(perm_function(t.perm), i)))
            return sub(one, self.enum(t.enum, compose(perm_function(invert_perm(t.perm)), i), i))
        if isinstance(t, ZOf):
            return self.enum(t.enum, i, compose(SELF_IMAGE, i))
        raise TypeError(f"not a sequence term: {t!r}")

    def _enum(self, t, k, i):
        kc = k.constant()
        if isinstance(t, EnumExpr):
            return parity(self.expr(t.body, {"k": k, "i": i}))
        if isinstance(t, Builder):
            return self._builder(t, k, i)
        if isinstance(t, Interleave):
            if kc is not None:
                return self.enum(t.second if kc & 1 else t.first, const(kc >> 1), i)
            half = div(k, 2)
            return if_(mod(k, 2), self.enum(t.second, half, i), self.enum(t.first, half, i))
        if isinstance(t, Prepend):
            if kc is not None:
                return self.seq(t.head, i) if kc == 0 else self.enum(t.tail, const(kc - 1), i)
            return if_(k, self.enum(t.tail, sub(k, const(1)), i), self.seq(t.head, i))
        if isinstance(t, TowerX):
            return self.enum(unfold_tower(t), k, i)
        if kc is None:
            raise NotEventuallyPeriodic(f"{type(t).__name__} rows are only analysable at a fixed row index")
        if isinstance(t, Dovetail):
            a, b = unpair(kc)
            return parity(self.expr(t.family, {"a": const(a), "b": const(b), "i": i}))
        if isinstance(t, YOf):
            return self.seq(DiagPerm(t.enum, unrank_perm(kc), t.variant), i)
        if isinstance(t, XInf):
            if kc & 1:
                return self.enum(Interleave(t.base, t.extra), const(kc >> 1), i)
            return self.seq(Diag(TowerX(t.base, t.extra, (kc >> 1) + 1)), i)
        raise TypeError(f"not an enumeration term: {t!r}")

    def _builder(self, t: Builder, k, i):
        name = t.name
        if name == "zeros":
            return const(0)
        if name == "ones":
            return const(1)
        if name == "identity":
            return eq(k, i)
        if name == "binary_naturals":
            return bit(k, i)
        if name == "doubly_periodic":
            grid = t.params
            return lookup(mod(k, len(grid)), mod(i, len(grid[0])), grid)
        if name == "counterexample":
            return if_(eq(k, const(0)), eq(i, const(1)), eq(k, i))
        raise NotEventuallyPeriodic(f"builder {name!r} has no periodic structure to certify")


def abstract_seq(t: SeqTerm) -> QuasiLinear:
    """Exact quasi-linear description of ``i -> eval_seq(t, i)``."""
    try:
        return _Interpreter().seq(t, IDENT)
    except RecursionError:
        raise NotEventuallyPeriodic("term too deeply nested to analyse") from None


def abstract_expr(e: Expr, var: str = "i") -> QuasiLinear:
    """Quasi-linear description of an arithmetic body in one free variable."""
    return _Interpreter().expr(e, {var: IDENT})
