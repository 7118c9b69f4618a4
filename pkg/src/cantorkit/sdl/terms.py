"""AST for the Sequence Description Language.

Three layers:

* ``Expr`` nodes: total natural-number arithmetic over the free variables
  ``i`` (column), ``k`` (row), and ``a``/``b`` (family parameters).
* ``SeqTerm`` nodes: closed programs denoting one infinite bit sequence.
* ``EnumTerm`` nodes: closed programs denoting a matrix ``a[k][i]``, i.e. a
  countable family of sequences.

Every node is an immutable dataclass; structural equality is term equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Union

from ..errors import CantorkitError, InvalidSpec
from ..permutations import Perm

# ---------------------------------------------------------------- expressions


class Expr:
    __slots__ = ()

    def free_vars(self) -> frozenset[str]:
        raise NotImplementedError


@dataclass(frozen=True)
class Lit(Expr):
    value: int

    def __post_init__(self):
        if self.value < 0:
            raise CantorkitError("SDL literals are natural numbers")

    def free_vars(self):
        return frozenset()


@dataclass(frozen=True)
class Var(Expr):
    name: str

    def free_vars(self):
        return frozenset({self.name})


@dataclass(frozen=True)
class BinOp(Expr):
    """``op`` is one of ``add``, ``sub`` (truncated), ``mul``, ``eq``, ``lt``, ``bit``."""

    op: str
    left: Expr
    right: Expr

    def free_vars(self):
        return self.left.free_vars() | self.right.free_vars()


@dataclass(frozen=True)
class DivLit(Expr):
    """``div`` or ``mod`` by a positive literal."""

    op: str
    operand: Expr
    divisor: int

    def __post_init__(self):
        if self.divisor <= 0:
            raise CantorkitError("divisor must be a positive literal")

    def free_vars(self):
        return self.operand.free_vars()


@dataclass(frozen=True)
class If(Expr):
    cond: Expr
    then: Expr
    orelse: Expr

    def free_vars(self):
        return self.cond.free_vars() | self.then.free_vars() | self.orelse.free_vars()


@dataclass(frozen=True)
class Parity(Expr):
    operand: Expr

    def free_vars(self):
        return self.operand.free_vars()


BINARY_OPS = ("add", "sub", "mul", "eq", "lt", "bit")
CALL_OPS = ("eq", "lt", "bit")

# -------------------------------------------------------------------- terms


class Term:
    """Base for sequence and enumeration terms.

    ``_fn`` caches the compiled evaluator; it is excluded from equality.
    """


def _cache():
    return field(default=None, init=False, repr=False, compare=False, hash=False)


class SeqTerm(Term):
    pass


class EnumTerm(Term):
    pass


@dataclass(frozen=True)
class SeqExpr(SeqTerm):
    body: Expr
    _fn: Optional[Callable] = _cache()


@dataclass(frozen=True)
class Row(SeqTerm):
    enum: EnumTerm
    k: int
    _fn: Optional[Callable] = _cache()


@dataclass(frozen=True)
class Diag(SeqTerm):
    enum: EnumTerm
    _fn: Optional[Callable] = _cache()


@dataclass(frozen=True)
class DiagPerm(SeqTerm):
    """Permuted diagonal; ``variant`` is ``row`` or ``transversal``."""

    enum: EnumTerm
    perm: Perm
    variant: str
    _fn: Optional[Callable] = _cache()


@dataclass(frozen=True)
class ZOf(SeqTerm):
    enum: EnumTerm
    _fn: Optional[Callable] = _cache()


@dataclass(frozen=True)
class EnumExpr(EnumTerm):
    body: Expr
    _fn: Optional[Callable] = _cache()


@dataclass(frozen=True)
class Builder(EnumTerm):
    """Named corpus enumeration.

    ``params`` is ``()`` except for ``hashrows`` (``(salt,)``) and
    ``doubly_periodic`` (the bit grid as a tuple of row tuples).
    """

    name: str
    params: tuple = ()
    _fn: Optional[Callable] = _cache()

    def __post_init__(self):
        check_builder(self.name, self.params)


@dataclass(frozen=True)
class Interleave(EnumTerm):
    first: EnumTerm
    second: EnumTerm
    _fn: Optional[Callable] = _cache()


@dataclass(frozen=True)
class Prepend(EnumTerm):
    head: SeqTerm
    tail: EnumTerm
    _fn: Optional[Callable] = _cache()


@dataclass(frozen=True)
class Dovetail(EnumTerm):
    """Row ``pair(a, b)`` is ``i -> family(a, b, i)``; the body uses ``a``, ``b``, ``i``."""

    family: Expr
    _fn: Optional[Callable] = _cache()


@dataclass(frozen=True)
class YOf(EnumTerm):
    enum: EnumTerm
    variant: str
    _fn: Optional[Callable] = _cache()


@dataclass(frozen=True)
class TowerX(EnumTerm):
    """The level-``n`` set of the diagonal tower over ``base ∪ extra``."""

    base: EnumTerm
    extra: EnumTerm
    level: int
    _fn: Optional[Callable] = _cache()

    def __post_init__(self):
        if self.level < 1:
            raise CantorkitError("tower levels start at 1")


@dataclass(frozen=True)
class XInf(EnumTerm):
    base: EnumTerm
    extra: EnumTerm
    _fn: Optional[Callable] = _cache()


AnyTerm = Union[SeqTerm, EnumTerm]

SEQ_VARS = frozenset({"i"})
ENUM_VARS = frozenset({"k", "i"})
FAMILY_VARS = frozenset({"a", "b", "i"})
VARIANTS = ("row", "transversal")
BUILDER_NAMES = ("zeros", "ones", "identity", "binary_naturals", "hashrows", "doubly_periodic", "counterexample")


def check_builder(name: str, params: tuple) -> None:
    if name not in BUILDER_NAMES:
        raise InvalidSpec(f"unknown builder {name!r}")
    if name == "hashrows":
        if len(params) != 1 or not isinstance(params[0], int) or not 0 <= params[0] < 1 << 64:
            raise InvalidSpec("hashrows takes one 64-bit natural salt")
    elif name == "doubly_periodic":
        if len(params) < 1:
            raise InvalidSpec("doubly_periodic needs at least one row")
        width = len(params[0])
        if width < 1 or any(len(r) != width for r in params):
            raise InvalidSpec("doubly_periodic needs a non-empty rectangular grid")
        if any(bit not in (0, 1) for r in params for bit in r):
            raise InvalidSpec("doubly_periodic grid entries must be bits")
    elif params:
        raise InvalidSpec(f"builder {name!r} takes no parameters")


def unfold_tower(x: TowerX) -> EnumTerm:
    """One step of the tower definition, as plain combinators."""
    if x.level == 1:
        return Interleave(x.base, x.extra)
    below = TowerX(x.base, x.extra, x.level - 1)
    return Prepend(Diag(below), below)
