"""
Logarithm Machinery for hahnlog
Logarithmic cross-sections h of the value group, the power-series
logarithm on 1-units and its inverse, the base-field logarithm (symbolic
or certified dyadic), and the full logarithm on positive elements together
with its partial inverse. Membership in the image of h is decidable, which
is what makes the exponential fail on elements like t^-2.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import factorial
from typing import Optional, Sequence, Tuple, Union

from config.settings import VALIDATION_RULES
from core.errors import (
    AmbiguousComparison,
    ConstantNotExponentiable,
    InvalidClass,
    InvalidCrossSection,
    ModeMismatch,
    NotInLogDomain,
    NotPositive,
    RankMismatch,
    TruncatedInput,
    UsageError,
)
from core.hahnseries import (
    Cutoff,
    Series,
    decompose_additive,
    decompose_multiplicative,
    is_positive,
    minus_w,
    power_sum,
    residue,
    s_add,
    s_cmp,
    s_scale,
    s_sub,
    shift,
)
from core.ordgroup import ArchClass, GroupElement, Order, nat_val
from utils.logger import log_debug


# ============================================================================
# CROSS-SECTIONS
# ============================================================================

@dataclass(frozen=True)
class CrossSection:
    """
    The data of a logarithmic cross-section h(g) = sum_i scale_i * g_i * t^rep_i.

    ``reps[i-1]`` is the negative representative of archimedean class i and
    ``scales[i-1]`` the positive rational embedding of that component.
    """

    rank: int
    reps: Tuple[GroupElement, ...]
    scales: Tuple[Fraction, ...]

    @classmethod
    def default(cls, rank: int) -> "CrossSection":
        """Representatives -e_i with identity component embeddings."""
        reps = tuple(-GroupElement.unit(rank, i) for i in range(1, rank + 1))
        return cls(rank, reps, (Fraction(1),) * rank)

    @classmethod
    def from_representatives(
        cls,
        reps: Sequence[GroupElement],
        scales: Optional[Sequence[Union[int, Fraction]]] = None
    ) -> "CrossSection":
        """
        Validate user-chosen representatives and scalings.

        Args:
            reps: One representative per archimedean class, in class order
            scales: Positive rationals (default all 1)

        Returns:
            CrossSection

        Raises:
            InvalidCrossSection: a representative is not negative, lies in
                the wrong class, or a scale is not positive
        """
        rank = len(reps)
        if rank == 0:
            raise InvalidCrossSection("at least one representative is needed")
        scales = tuple(Fraction(s) for s in (scales or [1] * rank))
        if len(scales) != rank:
            raise InvalidCrossSection(f"{len(scales)} scales for {rank} representatives")

        for i, (rep, scale) in enumerate(zip(reps, scales), start=1):
            if rep.rank != rank:
                raise InvalidCrossSection(f"representative {rep} has rank {rep.rank}, expected {rank}")
            if rep.sign() >= 0:
                raise InvalidCrossSection(f"representative {rep} of class {i} is not < 0")
            if nat_val(rep) != ArchClass(i):
                raise InvalidCrossSection(f"representative {rep} is not in class {i}")
            if scale <= 0:
                raise InvalidCrossSection(f"scale {scale} of class {i} is not > 0")
        for lower, upper in zip(reps, reps[1:]):
            if not lower < upper:
                raise InvalidCrossSection(f"representatives {lower} and {upper} are out of order")
        return cls(rank, tuple(reps), scales)


def sigma(cs: CrossSection, gamma: ArchClass) -> GroupElement:
    """The representative of archimedean class ``gamma``."""
    if gamma.is_infinite or not 1 <= gamma.index <= cs.rank:
        raise InvalidClass(f"class {gamma} outside 1..{cs.rank}")
    return cs.reps[gamma.index - 1]


def left_log_h(cs: CrossSection, g: GroupElement) -> Series:
    """h(g): exact, additive, order preserving, with every exponent < 0."""
    if g.rank != cs.rank:
        raise RankMismatch(f"rank {g.rank} vs cross-section rank {cs.rank}")
    return Series.build(
        cs.rank,
        [(rep, scale * gi) for rep, scale, gi in zip(cs.reps, cs.scales, g.coords)]
    )


def left_log(cs: CrossSection, a: Series) -> Series:
    """The left logarithm h(-w(a)) of a positive element."""
    return left_log_h(cs, minus_w(a))


def left_log_preimage(cs: CrossSection, s: Series) -> Optional[GroupElement]:
    """
    The g with h(g) equal to the purely infinite part of ``s``, if any.

    Raises:
        TruncatedInput: the purely infinite part of ``s`` is not known exactly
    """
    if s.rank != cs.rank:
        raise RankMismatch(f"rank {s.rank} vs cross-section rank {cs.rank}")
    if s.cutoff < Cutoff(GroupElement.zero(s.rank)):
        raise TruncatedInput(f"purely infinite part unknown above {s.cutoff}")

    infinite = decompose_additive(s).infinite_part
    position = {rep: i for i, rep in enumerate(cs.reps)}
    coords = [Fraction(0)] * cs.rank
    for g, c in infinite.terms:
        if g not in position:
            log_debug(f"exponent {g} is not a cross-section representative")
            return None
        i = position[g]
        coords[i] = c / cs.scales[i]
    return GroupElement(tuple(coords))


def in_left_log_image(cs: CrossSection, s: Series) -> bool:
    """Whether the purely infinite part of ``s`` lies in h(G)."""
    return left_log_preimage(cs, s) is not None


def witness_not_in_image(cs: CrossSection) -> Series:
    """t^(2 * sigma(1)): its purely infinite part escapes h(G)."""
    return Series.monomial(cs.reps[0] * 2)


# ============================================================================
# LOGARITHM AND EXPONENTIAL ON INFINITESIMALS
# ============================================================================

def _log1p_coefficient(n: int) -> Fraction:
    return Fraction(0) if n == 0 else Fraction((-1) ** (n + 1), n)


def _exp_coefficient(n: int) -> Fraction:
    return Fraction(1, factorial(n))


def log1p(eps: Series, target: Cutoff) -> Series:
    """
    log(1 + eps) = sum_{n >= 1} (-1)^(n+1) eps^n / n, truncated at ``target``.

    Raises:
        NotInfinitesimal: w(eps) <= 0
        CutoffTooCoarse: eps is not known up to ``target``
    """
    return power_sum(eps, _log1p_coefficient, target)


def exp_small(x: Series, target: Cutoff) -> Series:
    """exp(x) = sum_{n >= 0} x^n / n!, truncated at ``target``."""
    return power_sum(x, _exp_coefficient, target)


# ============================================================================
# BASE FIELD LOGARITHM
# ============================================================================

class LogMode(str, Enum):
    SYMBOLIC = "symbolic"
    DYADIC = "dyadic"

    @classmethod
    def parse(cls, name: Union[str, "LogMode"]) -> "LogMode":
        try:
            return cls(name)
        except ValueError:
            raise UsageError(f"unknown mode '{name}' (expected symbolic or dyadic)")


@dataclass(frozen=True)
class RationalInterval:
    """Closed interval with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __add__(self, other: "RationalInterval") -> "RationalInterval":
        return RationalInterval(self.lo + other.lo, self.hi + other.hi)

    def scale(self, q: Union[int, Fraction]) -> "RationalInterval":
        a, b = self.lo * q, self.hi * q
        return RationalInterval(min(a, b), max(a, b))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2


def _atanh_enclosure(y: Fraction, width: Fraction) -> RationalInterval:
    """
    Enclose atanh(y) = sum y^(2k+1)/(2k+1) for 0 <= y < 1 within ``width``.
    The tail after K terms is at most y^(2K+1) / ((2K+1)(1 - y^2)).
    """
    partial, power, k = Fraction(0), y, 0
    while True:
        tail = power / ((2 * k + 1) * (1 - y * y))
        if tail <= width:
            return RationalInterval(partial, partial + tail)
        partial += power / (2 * k + 1)
        power *= y * y
        k += 1


def ln_enclosure(c: Fraction, width: Fraction) -> RationalInterval:
    """
    Certified enclosure of ln(c) of width at most ``width``.

    c = 2^e * m with 1 <= m < 2, ln(c) = e*ln(2) + ln(m), where
    ln(2) = 2 atanh(1/3) and ln(m) = 2 atanh((m-1)/(m+1)).
    """
    c = Fraction(c)
    e = c.numerator.bit_length() - c.denominator.bit_length()
    m = c / Fraction(2) ** e
    if m < 1:
        e, m = e - 1, m * 2
    elif m >= 2:
        e, m = e + 1, m / 2

    ln_m = _atanh_enclosure((m - 1) / (m + 1), width / 4).scale(2)
    if e == 0:
        return ln_m
    ln_2 = _atanh_enclosure(Fraction(1, 3), width / (4 * abs(e))).scale(2)
    return ln_2.scale(e) + ln_m


def dyadic_ln(c: Fraction, precision: int) -> Fraction:
    """A multiple of 2^-(p+1) within 2^-p of ln(c)."""
    grid = Fraction(2) ** (precision + 1)
    enclosure = ln_enclosure(c, 1 / (2 * grid))
    return Fraction(round(enclosure.midpoint * grid)) / grid


class LogValue:
    """Value of the base-field logarithm on a positive rational."""

    def __add__(self, other: "LogValue") -> "LogValue":
        return log_value_add(self, other)


@dataclass(frozen=True)
class ExactZero(LogValue):
    pass


@dataclass(frozen=True)
class SymbolicLog(LogValue):
    """The formal symbol log(argument) for argument > 0, argument != 1."""

    argument: Fraction


@dataclass(frozen=True)
class Dyadic(LogValue):
    """An approximation within 2^-precision of the true logarithm."""

    approx: Fraction
    precision: int

    def interval(self) -> RationalInterval:
        radius = Fraction(1, 2 ** self.precision)
        return RationalInterval(self.approx - radius, self.approx + radius)


def base_log(c: Union[int, Fraction], mode: Union[str, LogMode], precision: int) -> LogValue:
    """
    Logarithm of a positive rational in the chosen mode.

    Raises:
        NotPositive: c <= 0
        UsageError: precision outside the configured range in dyadic mode
    """
    c = Fraction(c)
    mode = LogMode.parse(mode)
    if c <= 0:
        raise NotPositive(f"log of {c}")
    if c == 1:
        return ExactZero()
    if mode is LogMode.SYMBOLIC:
        return SymbolicLog(c)

    low, high = VALIDATION_RULES["precision_range"]
    if not low <= precision <= high:
        raise UsageError(f"precision must be in {low}..{high}, got {precision}")
    return Dyadic(dyadic_ln(c, precision), precision)


def log_value_add(a: LogValue, b: LogValue) -> LogValue:
    """log a + log b: arguments multiply symbolically, radii add in dyadic mode."""
    if isinstance(a, ExactZero):
        return b
    if isinstance(b, ExactZero):
        return a
    if isinstance(a, SymbolicLog) and isinstance(b, SymbolicLog):
        product = a.argument * b.argument
        return ExactZero() if product == 1 else SymbolicLog(product)
    if isinstance(a, Dyadic) and isinstance(b, Dyadic):
        # Two errors below 2^-p add up to below 2^-(p-1).
        return Dyadic(a.approx + b.approx, min(a.precision, b.precision) - 1)
    raise ModeMismatch(f"cannot add {a} and {b}")


def log_value_cmp(a: LogValue, b: LogValue) -> Order:
    """
    Order of two base logarithms. Symbolic values compare by their
    arguments; dyadic values only once their intervals separate.
    """
    if a == b:
        return Order.EQUAL
    kinds = {
        type(v) for v in (a, b) if not isinstance(v, ExactZero)
    }
    if kinds == {SymbolicLog}:
        arg_a = a.argument if isinstance(a, SymbolicLog) else Fraction(1)
        arg_b = b.argument if isinstance(b, SymbolicLog) else Fraction(1)
        return Order.of(arg_a - arg_b)
    if kinds == {Dyadic}:
        ia = a.interval() if isinstance(a, Dyadic) else RationalInterval(Fraction(0), Fraction(0))
        ib = b.interval() if isinstance(b, Dyadic) else RationalInterval(Fraction(0), Fraction(0))
        if ia.hi < ib.lo:
            return Order.LESS
        if ia.lo > ib.hi:
            return Order.GREATER
        raise AmbiguousComparison(f"dyadic intervals of {a} and {b} overlap")
    raise ModeMismatch(f"cannot compare {a} and {b}")


# ============================================================================
# FULL LOGARITHM
# ============================================================================

@dataclass(frozen=True)
class LogResult:
    """log(a) as (purely infinite part, base constant, infinitesimal part)."""

    infinite_part: Series
    const_part: LogValue
    small_part: Series

    def combine(self, other: "LogResult") -> "LogResult":
        """Componentwise sum (the log of a product)."""
        return LogResult(
            s_add(self.infinite_part, other.infinite_part),
            log_value_add(self.const_part, other.const_part),
            s_add(self.small_part, other.small_part),
        )

    def compare(self, other: "LogResult") -> Order:
        """Infinite part first, then the constant, then the small part."""
        order = s_cmp(self.infinite_part, other.infinite_part)
        if order is not Order.EQUAL:
            return order
        order = log_value_cmp(self.const_part, other.const_part)
        if order is not Order.EQUAL:
            return order
        return s_cmp(self.small_part, other.small_part)

    def as_series(self) -> Series:
        """The logarithm as one series; needs an exactly zero constant."""
        if not isinstance(self.const_part, ExactZero):
            raise UsageError(f"constant part {self.const_part} is not a rational series term")
        return s_add(self.infinite_part, self.small_part)


def full_log(
    cs: CrossSection,
    a: Series,
    target: Cutoff,
    mode: Union[str, LogMode],
    precision: int
) -> LogResult:
    """
    The logarithm of a positive element.

    Writes a = c t^g (1 + eps) and returns (h(-g), log c, log1p(eps)).

    Args:
        cs: Cross-section used for the purely infinite part
        a: Positive series
        target: Cutoff of the infinitesimal part
        mode: Base logarithm mode
        precision: Dyadic precision p (error below 2^-p)

    Raises:
        NotPositive: a <= 0
    """
    if not is_positive(a):
        raise NotPositive("log needs a > 0")
    parts = decompose_multiplicative(a)
    return LogResult(
        left_log_h(cs, -parts.value),
        base_log(parts.lead, mode, precision),
        log1p(parts.one_unit_tail, target),
    )


def right_log(
    a: Series,
    target: Cutoff,
    mode: Union[str, LogMode],
    precision: int
) -> LogResult:
    """The logarithm of a positive unit: log c + log1p(eps)."""
    if not is_positive(a):
        raise NotPositive("log needs a > 0")
    parts = decompose_multiplicative(a)
    if not parts.value.is_zero():
        raise NotInLogDomain(f"right logarithm needs value 0, got {parts.value}")
    return LogResult(
        Series.zero(a.rank),
        base_log(parts.lead, mode, precision),
        log1p(parts.one_unit_tail, target),
    )


# ============================================================================
# PARTIAL EXPONENTIAL
# ============================================================================

def full_exp(
    cs: CrossSection,
    x: Series,
    target: Cutoff,
    mode: Union[str, LogMode],
    precision: Optional[int] = None
) -> Series:
    """
    Partial inverse of :func:`full_log` on series. ``mode`` and ``precision``
    only shape the error for a nonzero constant.

    Splits x = p + c0 + iota (purely infinite, constant, infinitesimal) and
    returns t^-g * exp(iota) where h(g) = p.

    Raises:
        TruncatedInput: the constant of x is not known (cutoff <= 0)
        NotInLogDomain: p is not in h(G)
        ConstantNotExponentiable: c0 != 0 (exp(c0) is not rational)
    """
    zero = GroupElement.zero(x.rank)
    if not x.cutoff.admits(zero):
        raise TruncatedInput(f"constant term unknown above {x.cutoff}")

    g = left_log_preimage(cs, x)
    if g is None:
        raise NotInLogDomain("purely infinite part is not h(g) for any g")

    bounded = decompose_additive(x).bounded_part
    c0 = residue(bounded)
    if c0 != 0:
        where = f"{LogMode.parse(mode).value} mode"
        if precision is not None:
            where += f", precision {precision}"
        raise ConstantNotExponentiable(f"exp({c0}) is not rational ({where})")
    small = s_sub(bounded, Series.constant(x.rank, c0))
    return shift(exp_small(small, target.shift(g)), -g)


def exp_of_log(cs: CrossSection, result: LogResult, target: Cutoff) -> Series:
    """
    Inverse of :func:`full_log` on its image, symbolic constants included:
    (h(g), log c, y) maps back to c * t^-g * exp(y).

    Raises:
        NotInLogDomain: the infinite part is not in h(G)
        ConstantNotExponentiable: the constant is a dyadic approximation
    """
    g = left_log_preimage(cs, result.infinite_part)
    if g is None or any(e.sign() >= 0 for e in result.infinite_part.exponents):
        raise NotInLogDomain("infinite part is not h(g) for any g")

    const = result.const_part
    if isinstance(const, ExactZero):
        factor = Fraction(1)
    elif isinstance(const, SymbolicLog):
        factor = const.argument
    else:
        raise ConstantNotExponentiable(f"dyadic constant {const} has no exact exponential")
    return s_scale(factor, shift(exp_small(result.small_part, target.shift(g)), -g))
