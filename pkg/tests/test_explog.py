"""Tests for cross-sections, the logarithm and the partial exponential."""

from fractions import Fraction
import random

import mpmath
import pytest
from hypothesis import assume, given, reject, settings

from core.errors import (
    AmbiguousComparison,
    ConstantNotExponentiable,
    InvalidClass,
    InvalidCrossSection,
    ModeMismatch,
    NonTerminatingExpansion,
    NotInLogDomain,
    NotPositive,
    TruncatedInput,
    UsageError,
)
from core.explog import (
    CrossSection,
    Dyadic,
    ExactZero,
    LogMode,
    LogResult,
    SymbolicLog,
    base_log,
    dyadic_ln,
    exp_of_log,
    exp_small,
    full_exp,
    full_log,
    in_left_log_image,
    left_log,
    left_log_h,
    left_log_preimage,
    ln_enclosure,
    log1p,
    log_value_add,
    log_value_cmp,
    right_log,
    sigma,
    witness_not_in_image,
)
from core.hahnseries import EXACT, Cutoff, Series, s_cmp, s_val, truncate
from core.ordgroup import ArchClass, GroupElement, INFINITY, Order
from tests.conftest import (
    CROSS_SECTION_EXAMPLES,
    NON_SURJECTIVE_EXAMPLES,
    ROUND_TRIP_EXAMPLES,
    depth_cutoff,
    group_elements,
    infinitesimals,
    monic_positive_series,
    ranked,
    sample_group_element,
    sample_positive_series,
)


def g(e):
    return GroupElement.of(*e) if isinstance(e, tuple) else GroupElement.of(e)


def poly(terms, cutoff=None, rank=1):
    items = [(g(e), Fraction(c)) for e, c in terms.items()]
    if items:
        rank = items[0][0].rank
    return Series.build(rank, items, EXACT if cutoff is None else Cutoff(g(cutoff)))


C3 = Cutoff(g(3))


# ============================================================================
# CROSS-SECTIONS
# ============================================================================

def test_sigma(cs2):
    assert sigma(cs2, ArchClass(1)) == g((-1, 0))
    assert sigma(cs2, ArchClass(2)) == g((0, -1))
    assert sigma(cs2, ArchClass(1)) < sigma(cs2, ArchClass(2))
    with pytest.raises(InvalidClass):
        sigma(cs2, ArchClass(3))
    with pytest.raises(InvalidClass):
        sigma(cs2, INFINITY)


def test_left_log_h(cs1, cs2):
    assert left_log_h(cs1, g("5/2")) == poly({-1: "5/2"})
    assert left_log_h(cs1, g(0)).is_zero()
    assert left_log_h(cs2, g((2, "-1/3"))) == poly({(-1, 0): 2, (0, -1): "-1/3"})


def test_left_log_is_h_of_minus_w(cs1):
    assert left_log(cs1, poly({-3: 2, 0: 1})) == poly({-1: 3})


def test_custom_cross_section():
    cs = CrossSection.from_representatives([g(-2)], [3])
    assert left_log_h(cs, g(1)) == poly({-2: 3})
    assert left_log_preimage(cs, poly({-2: 1})) == g("1/3")
    assert not in_left_log_image(cs, poly({-1: 1}))


@pytest.mark.parametrize("reps, scales", [
    ([g(1)], None),
    ([g((0, -1)), g((0, -2))], None),
    ([g(-1)], [0]),
    ([g(-1)], [1, 2]),
    ([], None),
])
def test_cross_section_validation(reps, scales):
    with pytest.raises(InvalidCrossSection):
        CrossSection.from_representatives(reps, scales)


# ============================================================================
# LOG1P AND EXP_SMALL
# ============================================================================

def test_log1p():
    assert log1p(Series.zero(1), C3).is_zero()
    assert log1p(poly({1: 1}), Cutoff(g(4))) == poly({1: 1, 2: "-1/2", 3: "1/3"}, cutoff=4)


def test_log1p_in_a_smaller_class():
    eps = poly({(0, 1): 1})
    assert log1p(eps, Cutoff(g((0, 3)))) == poly({(0, 1): 1, (0, 2): "-1/2"}, cutoff=(0, 3))
    with pytest.raises(NonTerminatingExpansion):
        log1p(eps, Cutoff(g((1, 0))))


def test_exp_small():
    assert exp_small(Series.zero(1), C3) == poly({0: 1})
    assert exp_small(poly({1: 1}), Cutoff(g(4))) == poly({0: 1, 1: 1, 2: "1/2", 3: "1/6"}, cutoff=4)


def test_exp_small_and_log1p_invert_each_other():
    x = poly({1: 1, 2: -1})
    target = Cutoff(g(5))
    back = log1p(exp_small(x, target) - poly({0: 1}), target)
    assert back == truncate(x, target)


# ============================================================================
# BASE LOGARITHM
# ============================================================================

def test_base_log_modes():
    assert base_log(1, "dyadic", 10) == ExactZero()
    assert base_log(2, LogMode.SYMBOLIC, 10) == SymbolicLog(Fraction(2))
    value = base_log(2, "dyadic", 10)
    assert isinstance(value, Dyadic)
    assert abs(value.approx - Fraction(693147, 1000000)) <= Fraction(1, 2 ** 10)


def test_base_log_errors():
    with pytest.raises(NotPositive):
        base_log(0, "symbolic", 20)
    with pytest.raises(NotPositive):
        base_log(Fraction(-1, 2), "dyadic", 20)
    with pytest.raises(UsageError):
        base_log(2, "dyadic", 0)
    with pytest.raises(UsageError):
        LogMode.parse("decimal")


@pytest.mark.parametrize("c", [Fraction(2), Fraction(3), Fraction(10), Fraction(1, 2)])
def test_dyadic_ln_against_mpmath(c):
    mpmath.mp.dps = 60
    precision = 20
    approx = dyadic_ln(c, precision)
    exact = mpmath.log(mpmath.mpf(c.numerator) / c.denominator)
    error = abs(mpmath.mpf(approx.numerator) / approx.denominator - exact)
    assert error <= mpmath.mpf(2) ** -precision
    assert approx.denominator <= 2 ** (precision + 1)


@pytest.mark.parametrize("c", [Fraction(7, 5), Fraction(1000), Fraction(1, 1024)])
def test_ln_enclosure_contains_the_logarithm(c):
    mpmath.mp.dps = 60
    width = Fraction(1, 2 ** 30)
    interval = ln_enclosure(c, width)
    exact = mpmath.log(mpmath.mpf(c.numerator) / c.denominator)
    assert interval.width <= width
    assert mpmath.mpf(interval.lo.numerator) / interval.lo.denominator <= exact
    assert exact <= mpmath.mpf(interval.hi.numerator) / interval.hi.denominator


def test_log_value_arithmetic():
    assert log_value_add(SymbolicLog(Fraction(2)), SymbolicLog(Fraction(1, 2))) == ExactZero()
    assert log_value_add(ExactZero(), SymbolicLog(Fraction(3))) == SymbolicLog(Fraction(3))
    total = log_value_add(Dyadic(Fraction(1, 2), 10), Dyadic(Fraction(1, 4), 12))
    assert total == Dyadic(Fraction(3, 4), 9)
    with pytest.raises(ModeMismatch):
        log_value_add(SymbolicLog(Fraction(2)), Dyadic(Fraction(0), 5))


def test_log_value_order():
    assert log_value_cmp(SymbolicLog(Fraction(2)), SymbolicLog(Fraction(3))) is Order.LESS
    assert log_value_cmp(ExactZero(), SymbolicLog(Fraction(1, 2))) is Order.GREATER
    assert log_value_cmp(Dyadic(Fraction(1), 10), ExactZero()) is Order.GREATER
    with pytest.raises(AmbiguousComparison):
        log_value_cmp(Dyadic(Fraction(0), 1), Dyadic(Fraction(1, 4), 1))
    with pytest.raises(ModeMismatch):
        log_value_cmp(SymbolicLog(Fraction(2)), Dyadic(Fraction(1), 10))


# ============================================================================
# FULL LOGARITHM AND EXPONENTIAL
# ============================================================================

def test_full_log(cs1):
    assert full_log(cs1, poly({-1: 1}), C3, "symbolic", 20) == LogResult(
        poly({-1: 1}), ExactZero(), Series.zero(1)
    )
    assert full_log(cs1, poly({0: 1}), C3, "symbolic", 20) == LogResult(
        Series.zero(1), ExactZero(), Series.zero(1)
    )


def test_full_log_composes_the_three_parts(cs1):
    a = poly({-3: 2, -2: 2})
    result = full_log(cs1, a, C3, "symbolic", 20)
    assert result.infinite_part == poly({-1: 3})
    assert result.const_part == SymbolicLog(Fraction(2))
    assert result.small_part == poly({1: 1, 2: "-1/2"}, cutoff=3)


def test_full_log_needs_positive(cs1):
    with pytest.raises(NotPositive):
        full_log(cs1, poly({-1: -1}), C3, "symbolic", 20)


def test_right_log():
    result = right_log(poly({0: 2, 1: 2}), C3, "symbolic", 20)
    assert result.infinite_part.is_zero()
    assert result.const_part == SymbolicLog(Fraction(2))
    with pytest.raises(NotInLogDomain):
        right_log(poly({-1: 1}), C3, "symbolic", 20)


def test_log_result_as_series(cs1):
    assert full_log(cs1, poly({-2: 1, -1: 1}), C3, "symbolic", 20).as_series() == poly(
        {-1: 2, 1: 1, 2: "-1/2"}, cutoff=3
    )
    with pytest.raises(UsageError):
        full_log(cs1, poly({0: 2}), C3, "symbolic", 20).as_series()


def test_in_left_log_image(cs1):
    assert left_log_preimage(cs1, poly({-1: 5, 0: 3, 1: 1})) == g(5)
    assert not in_left_log_image(cs1, poly({-2: 1}))
    assert left_log_preimage(cs1, Series.zero(1)) == g(0)
    with pytest.raises(TruncatedInput):
        in_left_log_image(cs1, poly({-1: 1}, cutoff=-1))


def test_witness_not_in_image(cs1, cs2):
    assert witness_not_in_image(cs1) == poly({-2: 1})
    assert witness_not_in_image(cs2) == poly({(-2, 0): 1})
    for cs in (cs1, cs2):
        witness = witness_not_in_image(cs)
        assert not in_left_log_image(cs, witness)
        with pytest.raises(NotInLogDomain):
            full_exp(cs, witness, depth_cutoff(cs.rank, 3), "symbolic")


def test_full_exp(cs1):
    assert full_exp(cs1, poly({-1: 1}), C3, "symbolic") == poly({-1: 1})
    assert full_exp(cs1, Series.zero(1), C3, "symbolic") == poly({0: 1})
    assert full_exp(cs1, poly({-1: 2, 1: 1}), C3, "symbolic") == poly(
        {-2: 1, -1: 1, 0: "1/2", 1: "1/6", 2: "1/24"}, cutoff=3
    )


def test_full_exp_errors(cs1):
    with pytest.raises(NotInLogDomain):
        full_exp(cs1, poly({-2: 1}), C3, "symbolic")
    with pytest.raises(ConstantNotExponentiable):
        full_exp(cs1, poly({0: 2}), C3, "dyadic")
    with pytest.raises(TruncatedInput):
        full_exp(cs1, Series.zero(1, Cutoff(g(0))), C3, "symbolic")


def test_exp_of_log_round_trip(cs1):
    a = poly({-3: 2, -2: 2})
    target = C3
    result = full_log(cs1, a, target.shift(-s_val(a)), "symbolic", 20)
    assert exp_of_log(cs1, result, target) == truncate(a, target)


def test_exp_of_log_rejects_dyadic_constants(cs1):
    result = full_log(cs1, poly({0: 2}), C3, "dyadic", 20)
    with pytest.raises(ConstantNotExponentiable):
        exp_of_log(cs1, result, C3)


# ============================================================================
# PROPERTIES
# ============================================================================

@settings(max_examples=CROSS_SECTION_EXAMPLES)
@given(ranked(group_elements, count=2))
def test_cross_section_contract(pair):
    a, b = pair
    cs = CrossSection.default(a.rank)
    ha, hb = left_log_h(cs, a), left_log_h(cs, b)
    if not a.is_zero():
        assert s_val(ha).sign() < 0
    assert left_log_h(cs, a + b) == ha + hb
    if a < b:
        assert s_cmp(ha, hb) is Order.LESS


@settings(max_examples=ROUND_TRIP_EXAMPLES)
@given(ranked(infinitesimals))
def test_log1p_and_exp_small_round_trip(x):
    assume(not x.is_zero())
    target = depth_cutoff(x.rank, 8)
    one = Series.one(x.rank)
    assert log1p(exp_small(x, target) - one, target) == truncate(x, target)
    assert exp_small(log1p(x, target), target) == truncate(one + x, target)


@settings(max_examples=ROUND_TRIP_EXAMPLES)
@given(ranked(monic_positive_series, count=2))
def test_full_log_is_a_morphism(pair):
    a, b = pair
    cs = CrossSection.default(a.rank)
    target = depth_cutoff(a.rank, 6)
    product = full_log(cs, a * b, target, "symbolic", 20)
    combined = full_log(cs, a, target, "symbolic", 20).combine(full_log(cs, b, target, "symbolic", 20))
    assert product == combined


@settings(max_examples=ROUND_TRIP_EXAMPLES)
@given(ranked(monic_positive_series, count=2))
def test_full_log_preserves_order(pair):
    a, b = pair
    cs = CrossSection.default(a.rank)
    target = depth_cutoff(a.rank, 6)
    try:
        order = full_log(cs, a, target, "symbolic", 20).compare(full_log(cs, b, target, "symbolic", 20))
    except AmbiguousComparison:
        reject()
    assert order is s_cmp(a, b)


@settings(max_examples=ROUND_TRIP_EXAMPLES)
@given(monic_positive_series(1))
def test_exp_inverts_log_on_monic_inputs(a):
    cs = CrossSection.default(1)
    target = C3
    log_target = max(target.shift(-s_val(a)), Cutoff(g(1)))
    log_a = full_log(cs, a, log_target, "symbolic", 20).as_series()
    assert truncate(full_exp(cs, log_a, target, "symbolic"), target) == truncate(a, target)


def test_log_never_reaches_the_witness():
    rng = random.Random(20261019)
    sections = {rank: CrossSection.default(rank) for rank in (1, 2, 3)}
    for _ in range(NON_SURJECTIVE_EXAMPLES):
        rank = rng.randint(1, 3)
        cs = sections[rank]
        witness = witness_not_in_image(cs)
        a = sample_positive_series(rng, rank)
        assert full_log(cs, a, depth_cutoff(rank, 1), "symbolic", 20).infinite_part != witness
        assert left_log_h(cs, sample_group_element(rng, rank)) != witness


@settings(max_examples=ROUND_TRIP_EXAMPLES)
@given(ranked(infinitesimals))
def test_exp_of_infinitesimals_is_a_one_unit(x):
    cs = CrossSection.default(x.rank)
    result = full_exp(cs, x, depth_cutoff(x.rank, 4), "symbolic")
    assert s_val(result).is_zero()
    assert result.terms[0][1] == 1
    assert all(e.sign() > 0 for e in result.exponents[1:])
