"""Finite-prefix escape witnesses and membership scans.

A scan never claims equality from agreement on a prefix: rows that agree up
to the horizon are ``unknown`` unless both sides carry an eventually
periodic certificate and the certificates coincide.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Optional

from ..errors import CantorkitError, NotEventuallyPeriodic
from ..sdl.evaluate import seq_fn
from ..sdl.terms import EnumTerm, Row, SeqTerm
from .periodic import ep_equal, ep_of_term

__all__ = [
    "Witness",
    "DISAGREEMENT",
    "PROVEN_EQUAL",
    "UNKNOWN",
    "find_disagreement",
    "verify_escape",
    "membership_scan",
    "witnesses_to_csv",
    "witnesses_from_csv",
]

DISAGREEMENT = "disagreement"
PROVEN_EQUAL = "proven_equal"
UNKNOWN = "unknown"
KINDS = (DISAGREEMENT, PROVEN_EQUAL, UNKNOWN)


@dataclass(frozen=True)
class Witness:
    kind: str
    row: int
    position: Optional[int]
    horizon: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise CantorkitError(f"unknown witness kind {self.kind!r}")
        if (self.kind == DISAGREEMENT) != (self.position is not None):
            raise CantorkitError("exactly the disagreement witnesses carry a position")


def find_disagreement(s: SeqTerm, t: SeqTerm, horizon: int) -> Optional[int]:
    """Least ``i < horizon`` with ``s(i) != t(i)``; ``None`` means unknown, not equal."""
    if horizon < 1:
        raise CantorkitError("horizon must be at least 1")
    f, g = seq_fn(s), seq_fn(t)
    for i in range(horizon):
        if f(i) != g(i):
            return i
    return None


def verify_escape(e: EnumTerm, y: SeqTerm, rows: int, horizon: int) -> list[Witness]:
    if horizon < rows:
        raise CantorkitError("horizon must be at least the number of rows checked")
    out = []
    for k in range(rows):
        pos = find_disagreement(y, Row(e, k), horizon)
        out.append(Witness(DISAGREEMENT, k, pos, horizon) if pos is not None else Witness(UNKNOWN, k, None, horizon))
    return out


def membership_scan(s: SeqTerm, e: EnumTerm, rows: int, horizon: int) -> list[Witness]:
    """Look for ``s`` among the first ``rows`` rows of ``e``."""
    out = []
    s_form = None
    for k in range(rows):
        r = Row(e, k)
        pos = find_disagreement(s, r, horizon)
        if pos is not None:
            out.append(Witness(DISAGREEMENT, k, pos, horizon))
            continue
        kind = UNKNOWN
        try:
            if s_form is None:
                s_form = ep_of_term(s)
            if ep_equal(s_form, ep_of_term(r)):
                kind = PROVEN_EQUAL
        except NotEventuallyPeriodic:
            pass
        out.append(Witness(kind, k, None, horizon))
    return out


_FIELDS = ("row", "kind", "position", "horizon")


def witnesses_to_csv(witnesses: Iterable[Witness], header: bool = False, one_based: bool = False) -> str:
    shift = 1 if one_based else 0
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    if header:
        w.writerow(_FIELDS)
    for wit in witnesses:
        pos = "" if wit.position is None else wit.position + shift
        w.writerow((wit.row + shift, wit.kind, pos, wit.horizon))
    return buf.getvalue()


def witnesses_from_csv(text: str, header: bool = False, one_based: bool = False) -> list[Witness]:
    shift = 1 if one_based else 0
    rows = list(csv.reader(io.StringIO(text)))
    if header:
        rows = rows[1:]
    return [
        Witness(kind, int(r) - shift, None if pos == "" else int(pos) - shift, int(h))
        for r, kind, pos, h in rows
    ]
