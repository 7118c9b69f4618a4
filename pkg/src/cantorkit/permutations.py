"""Finite-support permutations of the naturals and their canonical enumeration.

A :class:`Perm` is a bijection of ``{0, 1, 2, ...}`` that is the identity
from some bound onwards.  Canonical perms are ranked: rank 0 is the
identity, then come blocks by increasing bound ``m = 2, 3, ...``; block
``m`` lists, in lexicographic table order, the ``m! - (m-1)!``
permutations of ``range(m)`` whose last entry is not ``m - 1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Sequence

from .errors import CantorkitError, EqualPoints, NonCanonical

__all__ = [
    "Perm",
    "IDENTITY",
    "apply_perm",
    "transposition",
    "compose_perm",
    "invert_perm",
    "unrank_perm",
    "rank_perm",
    "block_size",
    "parse_perm",
    "format_perm",
]


@dataclass(frozen=True)
class Perm:
    table: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        m = len(self.table)
        if sorted(self.table) != list(range(m)):
            raise CantorkitError(f"table {list(self.table)} is not a permutation of range({m})")

    @classmethod
    def from_table(cls, table: Sequence[int]) -> Perm:
        """Build a perm from any valid table, stripping trailing fixed points."""
        t = list(table)
        while t and t[-1] == len(t) - 1:
            t.pop()
        return cls(tuple(t))

    @property
    def bound(self) -> int:
        return len(self.table)

    @property
    def is_canonical(self) -> bool:
        return not self.table or self.table[-1] != len(self.table) - 1

    def __call__(self, i: int) -> int:
        return self.table[i] if i < len(self.table) else i

    def __str__(self) -> str:
        return format_perm(self)


IDENTITY = Perm()


def apply_perm(p: Perm, i: int) -> int:
    return p(i)


def transposition(a: int, b: int) -> Perm:
    if a == b:
        raise EqualPoints(f"transposition needs two distinct points, got {a} twice")
    if a < 0 or b < 0:
        raise CantorkitError("transposition points must be natural numbers")
    table = list(range(max(a, b) + 1))
    table[a], table[b] = b, a
    return Perm.from_table(table)


def compose_perm(p: Perm, q: Perm) -> Perm:
    """Return ``p ∘ q``, i.e. ``i -> p(q(i))``."""
    m = max(p.bound, q.bound)
    return Perm.from_table([p(q(i)) for i in range(m)])


def invert_perm(p: Perm) -> Perm:
    inv = [0] * p.bound
    for i, v in enumerate(p.table):
        inv[v] = i
    return Perm(tuple(inv))


def block_size(m: int) -> int:
    """Number of canonical perms with bound exactly ``m``."""
    if m == 0:
        return 1
    if m == 1:
        return 0
    return factorial(m) - factorial(m - 1)


def _completions(remaining: int, last_available: bool) -> int:
    # arrangements of the remaining values whose final slot avoids m-1
    if remaining == 0:
        return 1
    if last_available:
        return factorial(remaining) - factorial(remaining - 1)
    return factorial(remaining)


def _block_of(n: int) -> tuple[int, int]:
    """Map a rank ``n >= 1`` to (bound, offset within its block)."""
    m = 2
    while n > block_size(m):
        n -= block_size(m)
        m += 1
    return m, n - 1


@lru_cache(maxsize=8192)
def unrank_perm(n: int) -> Perm:
    if n < 0:
        raise CantorkitError("rank must be a natural number")
    if n == 0:
        return IDENTITY
    m, r = _block_of(n)
    available = list(range(m))
    table = []
    for pos in range(m):
        for v in available:
            rest = [u for u in available if u != v]
            if pos == m - 1 and v == m - 1:
                count = 0
            else:
                count = _completions(len(rest), (m - 1) in rest)
            if r < count:
                table.append(v)
                available = rest
                break
            r -= count
    return Perm(tuple(table))


def rank_perm(p: Perm) -> int:
    if not p.is_canonical:
        raise NonCanonical(f"{list(p.table)} ends in a fixed point")
    m = p.bound
    if m == 0:
        return 0
    offset = 1 + sum(block_size(b) for b in range(2, m))
    available = list(range(m))
    r = 0
    for pos, v in enumerate(p.table):
        for u in available:
            if u == v:
                break
            rest = [w for w in available if w != u]
            if not (pos == m - 1 and u == m - 1):
                r += _completions(len(rest), (m - 1) in rest)
        available.remove(v)
    return offset + r


_FACTOR = re.compile(r"\s*(?:(id)|t\(\s*(\d+)\s*,\s*(\d+)\s*\)|#(\d+)|\[([\d,\s]*)\])\s*")


def parse_perm(text: str) -> Perm:
    """Parse ``id``, ``t(a,b)``, ``#n``, ``[2,0,1]`` or ``*``-products of those.

    Products apply left to right: ``t(0,1)*t(1,2)`` first swaps 0 and 1,
    then swaps 1 and 2.
    """
    factors = text.split("*")
    result = IDENTITY
    for factor in factors:
        m = _FACTOR.fullmatch(factor)
        if m is None:
            raise CantorkitError(f"cannot parse permutation factor {factor.strip()!r}")
        ident, a, b, rank, table = m.groups()
        if ident:
            p = IDENTITY
        elif a is not None:
            p = transposition(int(a), int(b))
        elif rank is not None:
            p = unrank_perm(int(rank))
        else:
            entries = [int(x) for x in table.split(",") if x.strip()]
            p = Perm.from_table(entries)
        result = compose_perm(p, result)
    return result


def format_perm(p: Perm) -> str:
    """Canonical text form: ``#rank``."""
    return f"#{rank_perm(p)}"
