"""Eventually periodic bit sequences: normal forms and decidable equality."""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Sequence

from ..errors import CantorkitError, NotEventuallyPeriodic
from ..sdl.terms import SeqTerm
from .quasilinear import abstract_seq

__all__ = [
    "EventuallyPeriodic",
    "failure_function",
    "minimal_period",
    "ep_normalize",
    "ep_equal",
    "ep_of_term",
    "equality_horizon",
]


@dataclass(frozen=True)
class EventuallyPeriodic:
    """``pre`` followed by ``per`` repeated forever."""

    pre: tuple
    per: tuple

    def __post_init__(self):
        if not self.per:
            raise CantorkitError("the periodic part must be non-empty")

    def __call__(self, i: int) -> int:
        if i < len(self.pre):
            return self.pre[i]
        return self.per[(i - len(self.pre)) % len(self.per)]

    def prefix(self, n: int) -> list[int]:
        return [self(i) for i in range(n)]


def failure_function(s: Sequence) -> list[int]:
    """KMP border table: ``fail[j]`` is the longest proper border of ``s[:j+1]``."""
    fail = [0] * len(s)
    k = 0
    for j in range(1, len(s)):
        while k and s[j] != s[k]:
            k = fail[k - 1]
        if s[j] == s[k]:
            k += 1
        fail[j] = k
    return fail


def minimal_period(block: Sequence) -> int:
    """Shortest ``d`` dividing ``len(block)`` with ``block == block[:d] * (len/d)``."""
    n = len(block)
    d = n - failure_function(block)[-1]
    return d if n % d == 0 else n


def ep_normalize(pre: Sequence[int], per: Sequence[int]) -> EventuallyPeriodic:
    if not per:
        raise CantorkitError("the periodic part must be non-empty")
    per = list(per[: minimal_period(per)])
    pre = list(pre)
    # absorb trailing preperiod bits that already agree with the cycle
    while pre and pre[-1] == per[-1]:
        pre.pop()
        per = per[-1:] + per[:-1]
    return EventuallyPeriodic(tuple(pre), tuple(per))


def ep_equal(a: EventuallyPeriodic, b: EventuallyPeriodic) -> bool:
    a = ep_normalize(a.pre, a.per)
    b = ep_normalize(b.pre, b.per)
    return a == b


def equality_horizon(a: EventuallyPeriodic, b: EventuallyPeriodic) -> int:
    """Agreement on ``range(equality_horizon(a, b))`` implies equality."""
    return max(len(a.pre), len(b.pre)) + 2 * lcm(len(a.per), len(b.per))


def ep_of_term(s: SeqTerm) -> EventuallyPeriodic:
    """Exact normal form of ``s``, or :class:`NotEventuallyPeriodic` if it cannot be certified."""
    f = abstract_seq(s)
    if not f.bounded or any(v not in (0, 1) for v in f.pre + f.offsets):
        raise NotEventuallyPeriodic("symbolic form is not a bit sequence")  # pragma: no cover
    return ep_normalize(f.pre, f.offsets)
