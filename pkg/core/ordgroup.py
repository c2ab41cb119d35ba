"""
Ordered Exponent Group for hahnlog
The group G = Q^r under lexicographic order (first coordinate most
significant), its natural valuation, archimedean classes and convex
subgroups.
"""

from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, List, Optional, Tuple, Union

from core.errors import InvalidClass, InvalidLevel, RankMismatch

RationalLike = Union[int, Fraction, str]


class Order(IntEnum):
    """Result of a three-way comparison."""

    LESS = -1
    EQUAL = 0
    GREATER = 1

    @classmethod
    def of(cls, sign: int) -> "Order":
        return cls((sign > 0) - (sign < 0))


# ============================================================================
# GROUP ELEMENTS
# ============================================================================

@total_ordering
@dataclass(frozen=True)
class GroupElement:
    """An exponent g in Q^r. Index 0 of ``coords`` is the most significant."""

    coords: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coords = tuple(Fraction(c) for c in self.coords)
        if not coords:
            raise RankMismatch("group elements need rank >= 1")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def of(cls, *coords: RationalLike) -> "GroupElement":
        return cls(tuple(Fraction(c) for c in coords))

    @classmethod
    def zero(cls, rank: int) -> "GroupElement":
        return cls((Fraction(0),) * rank)

    @classmethod
    def unit(cls, rank: int, index: int) -> "GroupElement":
        """The unit vector e_index (1-based index, as archimedean classes are)."""
        if not 1 <= index <= rank:
            raise InvalidClass(f"unit index {index} outside 1..{rank}")
        return cls(tuple(Fraction(int(i == index - 1)) for i in range(rank)))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def sign(self) -> int:
        for c in self.coords:
            if c:
                return 1 if c > 0 else -1
        return 0

    def _check(self, other: "GroupElement") -> None:
        if not isinstance(other, GroupElement):
            raise TypeError(f"expected GroupElement, got {type(other).__name__}")
        if other.rank != self.rank:
            raise RankMismatch(f"rank {self.rank} vs rank {other.rank}")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "GroupElement":
        return GroupElement(tuple(-a for a in self.coords))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __mul__(self, scalar: RationalLike) -> "GroupElement":
        q = Fraction(scalar)
        return GroupElement(tuple(q * a for a in self.coords))

    __rmul__ = __mul__

    def __lt__(self, other: "GroupElement") -> bool:
        self._check(other)
        # Tuples of Fractions compare lexicographically.
        return self.coords < other.coords

    def __repr__(self) -> str:
        return f"GroupElement({', '.join(str(c) for c in self.coords)})"

    def __str__(self) -> str:
        """Exponent literal: ``q`` at rank 1, ``(q1,q2,...)`` otherwise."""
        if self.rank == 1:
            return str(self.coords[0])
        return "(" + ",".join(str(c) for c in self.coords) + ")"


# ============================================================================
# ARCHIMEDEAN CLASSES AND CONVEX SUBGROUPS
# ============================================================================

@total_ordering
@dataclass(frozen=True)
class ArchClass:
    """
    Archimedean class of an element of Q^r, identified with the index of its
    first nonzero coordinate. ``index=None`` is the class of 0 (Infinity).
    Class i < class j iff i < j, i.e. elements of class i are infinitely
    larger in absolute value.
    """

    index: Optional[int]

    @property
    def is_infinite(self) -> bool:
        return self.index is None

    def __lt__(self, other: "ArchClass") -> bool:
        if self.index is None:
            return False
        if other.index is None:
            return True
        return self.index < other.index

    def __str__(self) -> str:
        return "inf" if self.index is None else str(self.index)


INFINITY = ArchClass(None)


@dataclass(frozen=True)
class ConvexLevel:
    """The convex subgroup H_j = {g : first j coordinates are zero}."""

    j: int

    def validate(self, rank: int) -> None:
        if not 0 <= self.j <= rank:
            raise InvalidLevel(f"level {self.j} outside 0..{rank}")

    def contains(self, g: GroupElement) -> bool:
        self.validate(g.rank)
        return not any(g.coords[:self.j])


# ============================================================================
# OPERATIONS
# ============================================================================

def group_add(a: GroupElement, b: GroupElement) -> GroupElement:
    """Componentwise sum; raises RankMismatch on unequal ranks."""
    return a + b


def group_neg(a: GroupElement) -> GroupElement:
    return -a


def group_sub(a: GroupElement, b: GroupElement) -> GroupElement:
    return a - b


def group_scale(q: RationalLike, a: GroupElement) -> GroupElement:
    """Rational multiple q*a (Q^r is a Q-vector space)."""
    return a * q


def group_cmp(a: GroupElement, b: GroupElement) -> Order:
    """Lexicographic comparison decided at the first differing coordinate."""
    if a < b:
        return Order.LESS
    if a == b:
        return Order.EQUAL
    return Order.GREATER


def nat_val(a: GroupElement) -> ArchClass:
    """Natural valuation: the 1-based index of the first nonzero coordinate."""
    for i, c in enumerate(a.coords, start=1):
        if c:
            return ArchClass(i)
    return INFINITY


def same_arch_class(a: GroupElement, b: GroupElement) -> bool:
    """True iff a and b are nonzero and archimedean equivalent."""
    a._check(b)
    va = nat_val(a)
    return not va.is_infinite and va == nat_val(b)


def quotient_by_convex(a: GroupElement, level: ConvexLevel) -> GroupElement:
    """
    Image of ``a`` in G/H_j, represented by its first j coordinates.
    For j = 0 the quotient is trivial; it is returned as the rank-1 zero
    since GroupElement has rank >= 1.
    """
    level.validate(a.rank)
    if level.j == 0:
        return GroupElement.zero(1)
    return GroupElement(a.coords[:level.j])


def split_at(a: GroupElement, level: ConvexLevel) -> Tuple[GroupElement, GroupElement]:
    """Split ``a`` into its (outer, inner) parts for 0 < j < r."""
    level.validate(a.rank)
    if not 0 < level.j < a.rank:
        raise InvalidLevel(f"split level {level.j} must lie strictly between 0 and {a.rank}")
    return GroupElement(a.coords[:level.j]), GroupElement(a.coords[level.j:])


def join(outer: GroupElement, inner: GroupElement) -> GroupElement:
    """Inverse of :func:`split_at`."""
    return GroupElement(outer.coords + inner.coords)


def rho_embed(a: GroupElement) -> List[Tuple[ArchClass, Fraction]]:
    """
    Component decomposition (class, component) of ``a`` in the Hahn product
    of its archimedean components, one entry per nonzero coordinate.
    """
    return [(ArchClass(i), c) for i, c in enumerate(a.coords, start=1) if c]


def from_components(rank: int, components: Iterable[Tuple[ArchClass, Fraction]]) -> GroupElement:
    """Inverse of :func:`rho_embed`."""
    coords = [Fraction(0)] * rank
    for cls, value in components:
        if cls.is_infinite or not 1 <= cls.index <= rank:
            raise InvalidLevel(f"class {cls} outside 1..{rank}")
        coords[cls.index - 1] += Fraction(value)
    return GroupElement(tuple(coords))
