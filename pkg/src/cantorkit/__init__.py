"""Executable diagonal constructions over countable enumerations of binary sequences."""

from .diagonal import (
    TowerLevel,
    build_Y,
    diag_classical,
    diag_perm,
    diag_perm_row,
    diag_perm_transversal,
    tower,
    x_infinity,
    z_direct,
)
from .enumerations import BuilderSpec, build_enumeration, dovetail, interleave, pair, prepend, unpair
from .errors import CantorkitError
from .permutations import Perm, compose_perm, invert_perm, parse_perm, rank_perm, transposition, unrank_perm
from .sdl import decode_term, encode_term, eval_enum, eval_seq, parse_enum, parse_seq, prefix, row, show

__version__ = "0.1.0"

__all__ = [
    "BuilderSpec", "CantorkitError", "Perm", "TowerLevel",
    "build_Y", "build_enumeration", "compose_perm", "decode_term", "diag_classical", "diag_perm",
    "diag_perm_row", "diag_perm_transversal", "dovetail", "encode_term", "eval_enum", "eval_seq",
    "interleave", "invert_perm", "pair", "parse_enum", "parse_perm", "parse_seq", "prefix", "prepend",
    "rank_perm", "row", "show", "tower", "transposition", "unpair", "unrank_perm", "x_infinity", "z_direct",
]
