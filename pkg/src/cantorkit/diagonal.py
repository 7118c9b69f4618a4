"""Diagonal constructions: classical, permuted, the Y family, z, the tower and its limit."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CantorkitError, InvalidLevel
from .permutations import Perm
from .sdl.terms import VARIANTS, Diag, DiagPerm, EnumTerm, SeqTerm, TowerX, XInf, YOf, ZOf, unfold_tower

__all__ = [
    "diag_classical",
    "diag_perm_row",
    "diag_perm_transversal",
    "diag_perm",
    "build_Y",
    "z_direct",
    "TowerLevel",
    "tower",
    "x_infinity",
    "w_index",
    "x1_index",
]


def diag_classical(e: EnumTerm) -> SeqTerm:
    """``i -> 1 - e(i, i)``."""
    return Diag(e)


def diag_perm_row(e: EnumTerm, p: Perm) -> SeqTerm:
    """``i -> 1 - e(i, p(i))``.

    Reads row ``i`` at column ``p(i)`` but writes position ``i``, so for a
    non-identity ``p`` nothing forces a disagreement with row ``i``; this
    variant can land back inside ``e`` (see the ``counterexample`` builder).
    """
    return DiagPerm(e, p, "row")


def diag_perm_transversal(e: EnumTerm, p: Perm) -> SeqTerm:
    """``p(i) -> 1 - e(i, p(i))``: differs from row ``i`` at position ``p(i)``."""
    return DiagPerm(e, p, "transversal")


def diag_perm(e: EnumTerm, p: Perm, variant: str) -> SeqTerm:
    if variant not in VARIANTS:
        raise CantorkitError(f"variant must be one of {VARIANTS}, not {variant!r}")
    return DiagPerm(e, p, variant)


def build_Y(e: EnumTerm, variant: str = "row") -> EnumTerm:
    """Row ``k`` is the permuted diagonal of ``e`` under ``unrank_perm(k)``."""
    if variant not in VARIANTS:
        raise CantorkitError(f"variant must be one of {VARIANTS}, not {variant!r}")
    return YOf(e, variant)


def z_direct(e: EnumTerm) -> SeqTerm:
    """``i -> e(i, unrank_perm(i)(i))``, the diagonal of ``build_Y(e, 'row')`` flipped back."""
    return ZOf(e)


@dataclass(frozen=True)
class TowerLevel:
    n: int
    x_n: EnumTerm
    w_n: SeqTerm

    def unfolded(self) -> EnumTerm:
        """``x_n`` as ``interleave(x, y)`` (n = 1) or ``prepend(w_{n-1}, x_{n-1})``."""
        return unfold_tower(self.x_n)


def tower(x: EnumTerm, y: EnumTerm, n: int) -> TowerLevel:
    if n < 1:
        raise InvalidLevel(f"tower levels start at 1, got {n}")
    x_n = TowerX(x, y, n)
    return TowerLevel(n, x_n, Diag(x_n))


def x_infinity(x: EnumTerm, y: EnumTerm) -> EnumTerm:
    """Even rows ``2t`` carry ``w_{t+1}``; odd rows ``2t+1`` carry row ``t`` of ``x ∪ y``."""
    return XInf(x, y)


def w_index(n: int) -> int:
    """Row of ``x_infinity`` holding ``w_n``."""
    if n < 1:
        raise InvalidLevel(f"tower levels start at 1, got {n}")
    return 2 * (n - 1)


def x1_index(t: int) -> int:
    """Row of ``x_infinity`` holding row ``t`` of ``interleave(x, y)``."""
    return 2 * t + 1

