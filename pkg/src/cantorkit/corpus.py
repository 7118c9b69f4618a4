"""Deterministic test corpora: the named builders plus generated SDL enumerations."""

from __future__ import annotations

import random

from .diagonal import build_Y, diag_classical, diag_perm_row, diag_perm_transversal, tower, x_infinity, z_direct
from .enumerations import BuilderSpec, build_enumeration, dovetail, interleave, prepend
from .permutations import unrank_perm
from .sdl.printer import show_expr
from .sdl.terms import BinOp, DivLit, EnumExpr, Expr, If, Lit, Parity, Row, SeqExpr, Var

CORPUS_SEED = 20240917


def builder_corpus() -> list:
    """The six named builders, with fixed parameters."""
    return [
        build_enumeration("zeros"),
        build_enumeration("ones"),
        build_enumeration("identity"),
        build_enumeration("binary_naturals"),
        build_enumeration(BuilderSpec("hashrows", salt=0)),
        build_enumeration(BuilderSpec("doubly_periodic", matrix=((0, 1), (1, 0)))),
    ]


def random_expr(rng: random.Random, names: tuple, depth: int) -> Expr:
    if depth <= 0 or rng.random() < 0.2:
        if rng.random() < 0.6:
            return Var(rng.choice(names))
        return Lit(rng.randrange(0, 8))
    roll = rng.random()
    sub = lambda: random_expr(rng, names, depth - 1)  # noqa: E731
    if roll < 0.45:
        return BinOp(rng.choice(("add", "sub", "mul", "eq", "lt", "bit")), sub(), sub())
    if roll < 0.7:
        return DivLit(rng.choice(("div", "mod")), sub(), rng.randrange(1, 6))
    if roll < 0.85:
        return If(sub(), sub(), sub())
    return Parity(sub())


def generated_enums(n: int = 100, seed: int = CORPUS_SEED) -> list:
    """``n`` distinct SDL enumerations mentioning both ``k`` and ``i``."""
    rng = random.Random(seed)
    out, seen = [], set()
    while len(out) < n:
        body = random_expr(rng, ("k", "i"), rng.randrange(2, 5))
        key = show_expr(body)
        if key in seen or body.free_vars() != {"k", "i"}:
            continue
        seen.add(key)
        out.append(EnumExpr(body))
    return out


def full_corpus() -> list:
    return builder_corpus() + generated_enums()


def codec_corpus() -> list:
    """At least 100 distinct terms of every kind, including the tower limit and ``w_16``."""
    terms: list = []
    terms += builder_corpus()
    terms.append(build_enumeration("counterexample"))
    terms += generated_enums(40)
    rng = random.Random(CORPUS_SEED + 1)
    for _ in range(20):
        terms.append(SeqExpr(random_expr(rng, ("i",), rng.randrange(1, 4))))
    base = builder_corpus()
    x = base[3]
    y = build_Y(x, "row")
    terms += [
        diag_classical(base[2]),
        diag_perm_row(base[2], unrank_perm(1)),
        diag_perm_transversal(base[4], unrank_perm(17)),
        z_direct(base[5]),
        Row(base[4], 3),
        interleave(base[0], base[1]),
        prepend(diag_classical(base[0]), base[0]),
        dovetail("parity(a + b * i)"),
        build_Y(base[2], "transversal"),
        y,
        x_infinity(x, y),
        tower(x, y, 16).w_n,
        tower(x, y, 16).x_n,
    ]
    for n in range(1, 16):
        terms.append(tower(x, y, n).w_n)
    for p in range(2, 12):
        terms.append(diag_perm_row(base[p % 6], unrank_perm(p * 7)))
    unique = []
    for t in terms:
        if t not in unique:
            unique.append(t)
    return unique
