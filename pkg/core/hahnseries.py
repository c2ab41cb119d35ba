"""
Generalized Power Series for hahnlog
Finite-support series over Q with exponents in G = Q^r, carrying a cutoff
that records how far the series is known. Provides the field operations,
the canonical valuation and order, the additive and multiplicative
decompositions, and regrouping into nested series over a convex split.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from math import ceil
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Tuple, Union

from config.settings import EXPANSION_CONFIG
from core.errors import (
    AmbiguousComparison,
    CutoffTooCoarse,
    InvalidLevel,
    NonTerminatingExpansion,
    NotInfinitesimal,
    NotInValuationRing,
    NotPositive,
    RankMismatch,
    UsageError,
    ValueAboveCutoff,
    ZeroDivision,
    ZeroHasNoValue,
)
from core.ordgroup import (
    ConvexLevel,
    GroupElement,
    Order,
    join,
    nat_val,
    quotient_by_convex,
    split_at,
)
from utils.logger import log_debug

Scalar = Union[int, Fraction]


# ============================================================================
# CUTOFFS
# ============================================================================

@total_ordering
@dataclass(frozen=True)
class Cutoff:
    """
    Truncation bound of a series: terms are known strictly below ``bound``.
    ``bound=None`` is Infinity, i.e. the series is exact.
    """

    bound: Optional[GroupElement] = None

    @property
    def is_exact(self) -> bool:
        return self.bound is None

    def shift(self, g: GroupElement) -> "Cutoff":
        return self if self.bound is None else Cutoff(self.bound + g)

    def admits(self, g: GroupElement) -> bool:
        """True iff a term with exponent ``g`` lies below the bound."""
        return self.bound is None or g < self.bound

    def __lt__(self, other: "Cutoff") -> bool:
        if self.bound is None:
            return False
        if other.bound is None:
            return True
        return self.bound < other.bound

    def __str__(self) -> str:
        return "exact" if self.bound is None else str(self.bound)


EXACT = Cutoff()


def cutoff_at(bound: GroupElement) -> Cutoff:
    return Cutoff(bound)


def default_cutoff(rank: int, depth: int) -> Cutoff:
    """depth * e_r: positive and commensurate with every positive value."""
    return Cutoff(GroupElement.unit(rank, rank) * depth)


# ============================================================================
# SERIES
# ============================================================================

@dataclass(frozen=True)
class Series:
    """
    A finite-support element of k((G)) modulo its cutoff.

    ``terms`` holds (exponent, coefficient) pairs sorted by exponent, with
    no zero coefficients and every exponent below the cutoff.
    """

    rank: int
    terms: Tuple[Tuple[GroupElement, Fraction], ...] = ()
    cutoff: Cutoff = field(default=EXACT)

    @classmethod
    def build(
        cls,
        rank: int,
        coeffs: Union[Mapping[GroupElement, Scalar], Iterable[Tuple[GroupElement, Scalar]]],
        cutoff: Cutoff = EXACT
    ) -> "Series":
        """
        Normalise raw coefficients into a Series.

        Args:
            rank: Rank r of the exponent group
            coeffs: Exponent -> coefficient pairs (repeated exponents add up)
            cutoff: Truncation bound; terms at or above it are dropped

        Returns:
            Canonical Series
        """
        if cutoff.bound is not None and cutoff.bound.rank != rank:
            raise RankMismatch(f"cutoff of rank {cutoff.bound.rank} in a rank {rank} series")
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: Dict[GroupElement, Fraction] = {}
        for g, c in items:
            if g.rank != rank:
                raise RankMismatch(f"exponent {g} in a rank {rank} series")
            acc[g] = acc.get(g, Fraction(0)) + Fraction(c)
        terms = tuple(
            (g, c) for g, c in sorted(acc.items(), key=lambda item: item[0])
            if c != 0 and cutoff.admits(g)
        )
        return cls(rank, terms, cutoff)

    @classmethod
    def zero(cls, rank: int, cutoff: Cutoff = EXACT) -> "Series":
        return cls.build(rank, {}, cutoff)

    @classmethod
    def constant(cls, rank: int, c: Scalar) -> "Series":
        return cls.build(rank, {GroupElement.zero(rank): c})

    @classmethod
    def one(cls, rank: int) -> "Series":
        return cls.constant(rank, 1)

    @classmethod
    def monomial(cls, g: GroupElement, c: Scalar = 1) -> "Series":
        return cls.build(g.rank, {g: c})

    # ------------------------------------------------------------- accessors

    @property
    def is_exact(self) -> bool:
        return self.cutoff.is_exact

    @property
    def exponents(self) -> List[GroupElement]:
        return [g for g, _ in self.terms]

    def is_zero(self) -> bool:
        """Exactly zero (a truncated series with no terms is not)."""
        return not self.terms and self.is_exact

    def coeff(self, g: GroupElement) -> Fraction:
        for e, c in self.terms:
            if e == g:
                return c
        return Fraction(0)

    def as_dict(self) -> Dict[GroupElement, Fraction]:
        return dict(self.terms)

    def leading_term(self) -> Tuple[GroupElement, Fraction]:
        s_val(self)
        return self.terms[0]

    def floor(self) -> Optional[GroupElement]:
        """Lower bound of every exponent the series may carry (None for exact 0)."""
        if self.terms:
            return self.terms[0][0]
        return self.cutoff.bound

    # ------------------------------------------------------------- operators

    def __add__(self, other: "Series") -> "Series":
        return s_add(self, other)

    def __neg__(self) -> "Series":
        return s_neg(self)

    def __sub__(self, other: "Series") -> "Series":
        return s_sub(self, other)

    def __mul__(self, other: Union["Series", Scalar]) -> "Series":
        if isinstance(other, Series):
            return s_mul(self, other)
        return s_scale(other, self)

    def __rmul__(self, other: Scalar) -> "Series":
        return s_scale(other, self)

    def __pow__(self, n: int) -> "Series":
        return s_pow(self, n)


# ============================================================================
# FIELD OPERATIONS
# ============================================================================

def _check_rank(a: Series, b: Series) -> None:
    if a.rank != b.rank:
        raise RankMismatch(f"rank {a.rank} vs rank {b.rank}")


def s_add(a: Series, b: Series) -> Series:
    """Coefficientwise sum; the result is known up to the smaller cutoff."""
    _check_rank(a, b)
    return Series.build(a.rank, a.terms + b.terms, min(a.cutoff, b.cutoff))


def s_neg(a: Series) -> Series:
    return Series(a.rank, tuple((g, -c) for g, c in a.terms), a.cutoff)


def s_sub(a: Series, b: Series) -> Series:
    return s_add(a, s_neg(b))


def s_scale(q: Scalar, a: Series) -> Series:
    """Rational multiple; 0 times anything is exactly 0."""
    q = Fraction(q)
    if q == 0:
        return Series.zero(a.rank)
    return Series(a.rank, tuple((g, q * c) for g, c in a.terms), a.cutoff)


def shift(a: Series, g: GroupElement) -> Series:
    """Multiply by the monomial t^g."""
    if g.rank != a.rank:
        raise RankMismatch(f"rank {a.rank} vs rank {g.rank}")
    return Series(a.rank, tuple((e + g, c) for e, c in a.terms), a.cutoff.shift(g))


def truncate(a: Series, cutoff: Cutoff) -> Series:
    """Forget everything at or above ``cutoff``."""
    return Series.build(a.rank, a.terms, min(a.cutoff, cutoff))


def s_mul(a: Series, b: Series) -> Series:
    """
    Cauchy product of finite supports.

    The product of a truncated factor is known up to
    min(cutoff_a + floor(b), cutoff_b + floor(a)), where floor is the least
    exponent (or the cutoff if there are no terms). An exactly zero factor
    gives an exact zero.
    """
    _check_rank(a, b)
    if a.is_zero() or b.is_zero():
        return Series.zero(a.rank)

    bounds = []
    if not a.is_exact:
        bounds.append(a.cutoff.shift(b.floor()))
    if not b.is_exact:
        bounds.append(b.cutoff.shift(a.floor()))
    cutoff = min(bounds) if bounds else EXACT

    products = [(ga + gb, ca * cb) for ga, ca in a.terms for gb, cb in b.terms]
    return Series.build(a.rank, products, cutoff)


def s_pow(a: Series, n: int) -> Series:
    """Non-negative integer power by repeated squaring."""
    if n < 0:
        raise UsageError("negative powers need a target cutoff; use s_invert")
    result, base = Series.one(a.rank), a
    while n:
        if n & 1:
            result = s_mul(result, base)
        base = s_mul(base, base)
        n >>= 1
    return result


# ============================================================================
# VALUATION AND ORDER
# ============================================================================

def s_val(a: Series) -> GroupElement:
    """
    Canonical valuation w(a): the least exponent of the support.

    Raises:
        ZeroHasNoValue: a is exactly zero
        ValueAboveCutoff: no known terms below a finite cutoff
    """
    if a.terms:
        return a.terms[0][0]
    if a.is_exact:
        raise ZeroHasNoValue()
    raise ValueAboveCutoff(f"no terms below {a.cutoff}")


def s_cmp(a: Series, b: Series) -> Order:
    """Field order: the sign of the leading coefficient of a - b."""
    d = s_sub(a, b)
    if d.terms:
        return Order.of(d.terms[0][1])
    if d.is_exact:
        return Order.EQUAL
    raise AmbiguousComparison(f"difference vanishes below {d.cutoff}")


def is_positive(a: Series) -> bool:
    return s_cmp(a, Series.zero(a.rank)) is Order.GREATER


def residue(a: Series) -> Fraction:
    """Coefficient at exponent 0 of an element of the valuation ring."""
    if a.terms and a.terms[0][0].sign() < 0:
        raise NotInValuationRing(f"value {a.terms[0][0]} < 0")
    zero = GroupElement.zero(a.rank)
    if not a.cutoff.admits(zero):
        raise CutoffTooCoarse(f"residue needs a cutoff above 0, got {a.cutoff}")
    return a.coeff(zero)


# ============================================================================
# POWER SERIES EXPANSIONS
# ============================================================================

def terms_needed(value: GroupElement, target: Cutoff) -> int:
    """
    Least n with n * value >= target, for value > 0.

    Raises:
        NonTerminatingExpansion: the target is exact, lies in a strictly
            larger archimedean class than ``value``, or needs more than
            EXPANSION_CONFIG["max_terms"] terms
    """
    if target.is_exact:
        raise NonTerminatingExpansion("an exact result needs infinitely many terms")
    bound = target.bound
    if bound.sign() <= 0:
        return 0

    i, j = nat_val(value).index, nat_val(bound).index
    if i > j:
        raise NonTerminatingExpansion(
            f"no multiple of {value} reaches {bound} (archimedean class {i} below {j})"
        )
    if i < j:
        n = 1
    else:
        n = max(1, ceil(bound.coords[i - 1] / value.coords[i - 1]))
        if value * n < bound:
            n += 1

    if n > EXPANSION_CONFIG["max_terms"]:
        raise NonTerminatingExpansion(
            f"{n} terms needed, limit is {EXPANSION_CONFIG['max_terms']}"
        )
    return n


def power_sum(
    eps: Series,
    coefficient: Callable[[int], Fraction],
    target: Cutoff
) -> Series:
    """
    Sum_{n >= 0} coefficient(n) * eps^n, truncated at ``target``.

    Args:
        eps: Infinitesimal (every exponent > 0)
        coefficient: n -> rational coefficient of eps^n
        target: Cutoff of the result

    Returns:
        The truncated sum; exact when eps is exactly zero

    Raises:
        NotInfinitesimal: eps has a term of value <= 0
        CutoffTooCoarse: eps is not known far enough to reach ``target``
        NonTerminatingExpansion: see :func:`terms_needed`
    """
    rank = eps.rank
    if eps.is_zero():
        return Series.constant(rank, coefficient(0))

    floor = eps.floor()
    if floor.sign() <= 0:
        raise NotInfinitesimal(f"value {floor} is not > 0")
    if eps.cutoff < target:
        raise CutoffTooCoarse(f"input known below {eps.cutoff}, target is {target}")

    n_terms = terms_needed(floor, target)
    log_debug(f"power_sum: {n_terms} terms of value {floor} below {target}")

    total = Series.zero(rank, target)
    power = Series.one(rank)
    for n in range(n_terms):
        c = coefficient(n)
        if c:
            total = s_add(total, s_scale(c, power))
        power = truncate(s_mul(power, eps), target)
    return total


def _split_unit(a: Series) -> Tuple[GroupElement, Fraction, Series]:
    """a = c * t^g * (1 + eps) with eps = a / (c t^g) - 1."""
    g, c = a.leading_term()
    eps = s_sub(s_scale(1 / c, shift(a, -g)), Series.one(a.rank))
    return g, c, eps


def s_invert(a: Series, target: Cutoff) -> Series:
    """
    Multiplicative inverse up to ``target``.

    Writes a = c t^g (1 + eps) and returns c^-1 t^-g sum (-eps)^n. The result
    is exact when a is an exact monomial.

    Raises:
        ZeroDivision: a is exactly zero
        CutoffTooCoarse: the cutoff of a does not reach ``target``
    """
    if a.is_zero():
        raise ZeroDivision()
    g, c, eps = _split_unit(a)
    inner = target.shift(g)
    geometric = power_sum(eps, lambda n: Fraction((-1) ** n), inner)
    return s_scale(1 / c, shift(geometric, -g))


# ============================================================================
# DECOMPOSITIONS
# ============================================================================

@dataclass(frozen=True)
class AdditiveDecomposition:
    """a = infinite_part + bounded_part, split at the sign of the exponent."""

    infinite_part: Series
    bounded_part: Series


@dataclass(frozen=True)
class MultDecomposition:
    """a = lead * t^value * (1 + one_unit_tail) with lead > 0."""

    value: GroupElement
    lead: Fraction
    one_unit_tail: Series


def decompose_additive(a: Series) -> AdditiveDecomposition:
    """Purely infinite part (exponents < 0) plus the valuation-ring part."""
    zero = GroupElement.zero(a.rank)
    infinite_cutoff = a.cutoff if a.cutoff < Cutoff(zero) else EXACT
    infinite = Series.build(a.rank, [(g, c) for g, c in a.terms if g.sign() < 0], infinite_cutoff)
    bounded = Series.build(a.rank, [(g, c) for g, c in a.terms if g.sign() >= 0], a.cutoff)
    return AdditiveDecomposition(infinite, bounded)


def decompose_multiplicative(a: Series) -> MultDecomposition:
    """
    Split a positive element into monomial, positive unit and 1-unit parts.

    Raises:
        NotPositive: a <= 0
    """
    if not is_positive(a):
        raise NotPositive("decompose_multiplicative needs a > 0")
    g, c = a.leading_term()
    lead_inverse = s_invert(Series.monomial(g, c), EXACT)
    eps = s_sub(s_mul(a, lead_inverse), Series.one(a.rank))
    return MultDecomposition(g, c, eps)


def minus_w(a: Series) -> GroupElement:
    """-w(a) = w(1/a) for a > 0: the value map onto the value group."""
    if not is_positive(a):
        raise NotPositive("minus_w needs a > 0")
    return -s_val(a)


# ============================================================================
# REGROUPING OVER A CONVEX SPLIT
# ============================================================================

@dataclass(frozen=True)
class NestedSeries:
    """
    An element of k((H_j))((G/H_j)): outer exponents of rank j mapped to
    exact inner series of rank r - j. ``cutoff`` is the bound of the flat
    series.
    """

    split: ConvexLevel
    rank: int
    outer: Tuple[Tuple[GroupElement, Series], ...] = ()
    cutoff: Cutoff = field(default=EXACT)

    def inner(self, prefix: GroupElement) -> Series:
        for p, s in self.outer:
            if p == prefix:
                return s
        return Series.zero(self.rank - self.split.j)

    def compare(self, other: "NestedSeries") -> Order:
        """Outer exponent first, then the inner field order."""
        if (self.split, self.rank) != (other.split, other.rank):
            raise InvalidLevel(f"split {self.split.j} vs {other.split.j}")
        bound = min(self.cutoff, other.cutoff)
        prefixes = sorted({p for p, _ in self.outer} | {p for p, _ in other.outer})
        for p in prefixes:
            mine, theirs = self.inner(p), other.inner(p)
            if mine == theirs:
                continue
            lead = join(p, s_val(s_sub(mine, theirs)))
            if not bound.admits(lead):
                raise AmbiguousComparison(f"first difference lies above {bound}")
            return s_cmp(mine, theirs)
        if bound.is_exact:
            return Order.EQUAL
        raise AmbiguousComparison(f"no difference below {bound}")


def regroup(a: Series, level: ConvexLevel) -> NestedSeries:
    """
    Group the terms of ``a`` by their first j coordinates.

    Raises:
        InvalidLevel: unless 0 < j < r
    """
    level.validate(a.rank)
    if not 0 < level.j < a.rank:
        raise InvalidLevel(f"regroup level {level.j} must lie strictly between 0 and {a.rank}")

    groups: Dict[GroupElement, List[Tuple[GroupElement, Fraction]]] = {}
    for g, c in a.terms:
        outer, inner = split_at(g, level)
        groups.setdefault(outer, []).append((inner, c))

    inner_rank = a.rank - level.j
    outer = tuple(
        (p, Series.build(inner_rank, groups[p])) for p in sorted(groups)
    )
    return NestedSeries(level, a.rank, outer, a.cutoff)


def flatten(nested: NestedSeries) -> Series:
    """Concatenate outer and inner exponents (inverse of regroup)."""
    terms = [
        (join(p, g), c)
        for p, inner in nested.outer
        for g, c in inner.terms
    ]
    return Series.build(nested.rank, terms, nested.cutoff)


def coarse_val(a: Series, level: ConvexLevel) -> GroupElement:
    """The coarsened valuation: w(a) modulo H_j."""
    return quotient_by_convex(s_val(a), level)


def coarse_residue(a: Series, level: ConvexLevel) -> Series:
    """
    Residue of ``a`` for the coarsened valuation, an element of k((H_j)):
    the inner series at outer exponent 0.

    Raises:
        NotInValuationRing: the coarse value is < 0
        InvalidLevel: unless 0 < j < r
    """
    nested = regroup(a, level)
    zero = GroupElement.zero(level.j)
    if nested.outer and nested.outer[0][0] < zero:
        raise NotInValuationRing(f"coarse value {nested.outer[0][0]} < 0")
    inner = nested.inner(zero)
    if nested.cutoff.bound is not None:
        outer_bound, inner_bound = split_at(nested.cutoff.bound, level)
        if outer_bound < zero:
            raise CutoffTooCoarse(f"coarse residue needs a cutoff of outer value >= {zero}")
        if outer_bound == zero:
            return Series.build(inner.rank, inner.terms, Cutoff(inner_bound))
    return inner
