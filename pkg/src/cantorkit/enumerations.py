"""Countability witnesses and enumeration combinators."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .errors import InvalidSpec
from .numbering import MASK64, hashrows_bit, pair, splitmix64, unpair
from .sdl.parser import parse_family
from .sdl.terms import (
    BUILDER_NAMES,
    Builder,
    Dovetail,
    EnumTerm,
    Expr,
    Interleave,
    Prepend,
    SeqTerm,
    check_builder,
)

__all__ = [
    "pair",
    "unpair",
    "interleave",
    "prepend",
    "dovetail",
    "BuilderSpec",
    "build_enumeration",
    "hashrows_bit",
    "splitmix64",
    "MASK64",
]


def interleave(e1: EnumTerm, e2: EnumTerm) -> EnumTerm:
    """Even rows from ``e1``, odd rows from ``e2``."""
    return Interleave(e1, e2)


def prepend(s: SeqTerm, e: EnumTerm) -> EnumTerm:
    return Prepend(s, e)


def dovetail(family: Union[Expr, str]) -> EnumTerm:
    """Flatten the two-parameter family ``(a, b, i) -> bit`` along Cantor pairing."""
    if isinstance(family, str):
        family = parse_family(family)
    return Dovetail(family)


@dataclass(frozen=True)
class BuilderSpec:
    name: str
    salt: int = 0
    matrix: tuple = field(default=())

    def params(self) -> tuple:
        if self.name == "hashrows":
            return (self.salt,)
        if self.name == "doubly_periodic":
            return tuple(tuple(r) for r in self.matrix)
        return ()


def build_enumeration(spec: Union[BuilderSpec, str]) -> EnumTerm:
    if isinstance(spec, str):
        spec = BuilderSpec(spec)
    if spec.name not in BUILDER_NAMES:
        raise InvalidSpec(f"unknown builder {spec.name!r}; expected one of {', '.join(BUILDER_NAMES)}")
    params = spec.params()
    check_builder(spec.name, params)
    return Builder(spec.name, params)
