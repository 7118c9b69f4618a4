"""Invariant suites run by ``cantorkit verify``.

Each suite re-derives its claim by direct evaluation and returns a
:class:`CheckResult`; a suite never reports success on a row it could not
decide.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .analysis.witness import DISAGREEMENT, Witness, membership_scan
from .diagonal import build_Y, diag_classical, diag_perm, tower, w_index, x_infinity, z_direct
from .permutations import IDENTITY, Perm, unrank_perm
from .sdl.evaluate import enum_fn, seq_fn
from .sdl.terms import EnumTerm, Row, SeqTerm

__all__ = ["CheckResult", "SUITES", "run_suite", "check_escape"]


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        self.failures.append(message)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{status} {self.name}: {self.checked} checks, {len(self.failures)} failures"
        return line


def check_escape(e: EnumTerm, y: SeqTerm, rows: int, horizon: int) -> CheckResult:
    """Every row must yield a disagreement; proven_equal and unknown rows fail."""
    res = CheckResult("escape")
    res.witnesses = membership_scan(y, e, rows, horizon)
    f = seq_fn(y)
    for w in res.witnesses:
        res.checked += 1
        if w.kind != DISAGREEMENT:
            res.fail(f"row {w.row}: {w.kind}")
        elif f(w.position) == seq_fn(Row(e, w.row))(w.position):
            res.fail(f"row {w.row}: reported position {w.position} does not disagree")
    return res


def check_flip(e: EnumTerm, horizon: int) -> CheckResult:
    res = CheckResult("flip")
    d, g = seq_fn(diag_classical(e)), enum_fn(e)
    for i in range(horizon):
        res.checked += 1
        if d(i) != 1 - g(i, i):
            res.fail(f"position {i}")
    return res


def check_reduction(e: EnumTerm, horizon: int) -> CheckResult:
    res = CheckResult("reduction")
    d = seq_fn(diag_classical(e))
    for variant in ("row", "transversal"):
        f = seq_fn(diag_perm(e, IDENTITY, variant))
        for i in range(horizon):
            res.checked += 1
            if f(i) != d(i):
                res.fail(f"{variant} variant differs at {i}")
    return res


def check_transversal(e: EnumTerm, rows: int, perms: Optional[list] = None) -> CheckResult:
    res = CheckResult("transversal")
    g = enum_fn(e)
    for p in perms if perms is not None else [unrank_perm(n) for n in range(rows)]:
        f = seq_fn(diag_perm(e, p, "transversal"))
        for k in range(rows):
            res.checked += 1
            j = p(k)
            if f(j) == g(k, j):
                res.fail(f"perm {p}: row {k} agrees at {j}")
    return res


def check_z(e: EnumTerm, rows: int, horizon: int) -> CheckResult:
    res = CheckResult("z")
    y = build_Y(e, "row")
    z = seq_fn(z_direct(e))
    via_y = seq_fn(diag_classical(y))
    yf = enum_fn(y)
    for i in range(horizon):
        res.checked += 1
        if z(i) != via_y(i):
            res.fail(f"z and diag(Y) differ at {i}")
    for k in range(rows):
        res.checked += 1
        if z(k) == yf(k, k):
            res.fail(f"z agrees with Y row {k} at {k}")
    return res


def check_tower(e: EnumTerm, levels: int, rows: int, horizon: int, variant: str = "row") -> CheckResult:
    res = CheckResult("tower")
    y = build_Y(e, variant)
    for n in range(1, levels + 1):
        lvl = tower(e, y, n)
        w, x = seq_fn(lvl.w_n), enum_fn(lvl.x_n)
        for k in range(rows):
            res.checked += 1
            if w(k) == x(k, k):
                res.fail(f"w_{n} agrees with row {k} of x_{n} at {k}")
        nxt = enum_fn(tower(e, y, n + 1).x_n)
        for i in range(horizon):
            res.checked += 1
            if nxt(0, i) != w(i):
                res.fail(f"row 0 of x_{n + 1} differs from w_{n} at {i}")
    return res


def check_limit(e: EnumTerm, levels: int, rows: int, horizon: int, variant: str = "row") -> CheckResult:
    res = CheckResult("limit")
    y = build_Y(e, variant)
    xinf = x_infinity(e, y)
    g = enum_fn(xinf)
    for n in range(1, levels + 1):
        w = seq_fn(tower(e, y, n).w_n)
        for i in range(horizon):
            res.checked += 1
            if g(w_index(n), i) != w(i):
                res.fail(f"row {w_index(n)} of x_infinity differs from w_{n} at {i}")
    d = seq_fn(diag_classical(xinf))
    for k in range(rows):
        res.checked += 1
        if d(k) == g(k, k):
            res.fail(f"diag(x_infinity) agrees with row {k} at {k}")
    return res


SUITES = ("escape", "flip", "reduction", "transversal", "z", "tower", "limit")


def run_suite(name: str, e: EnumTerm, *, rows: int, horizon: int, levels: int = 16,
              perm: Optional[Perm] = None, variant: str = "row") -> CheckResult:
    if name == "escape":
        y = diag_classical(e) if perm is None else diag_perm(e, perm, variant)
        return check_escape(e, y, rows, horizon)
    if name == "flip":
        return check_flip(e, horizon)
    if name == "reduction":
        return check_reduction(e, horizon)
    if name == "transversal":
        return check_transversal(e, rows, None if perm is None else [perm])
    if name == "z":
        return check_z(e, rows, horizon)
    if name == "tower":
        return check_tower(e, levels, rows, horizon, variant)
    if name == "limit":
        return check_limit(e, levels, rows, horizon, variant)
    raise ValueError(f"unknown suite {name!r}")
