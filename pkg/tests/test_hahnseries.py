"""Tests for generalized power series: arithmetic, valuation, decompositions, regrouping."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from core.errors import (
    AmbiguousComparison,
    CutoffTooCoarse,
    InvalidLevel,
    NonTerminatingExpansion,
    NotInfinitesimal,
    NotInValuationRing,
    NotPositive,
    UsageError,
    ValueAboveCutoff,
    ZeroDivision,
    ZeroHasNoValue,
)
from core.hahnseries import (
    EXACT,
    Cutoff,
    NestedSeries,
    Series,
    coarse_residue,
    coarse_val,
    decompose_additive,
    decompose_multiplicative,
    default_cutoff,
    flatten,
    minus_w,
    power_sum,
    regroup,
    residue,
    s_cmp,
    s_invert,
    s_val,
    shift,
    terms_needed,
    truncate,
)
from core.ordgroup import ConvexLevel, GroupElement, Order
from tests.conftest import (
    FIELD_EXAMPLES,
    MINUS_W_EXAMPLES,
    REGROUP_EXAMPLES,
    depth_cutoff,
    exact_series,
    positive_series,
    ranked,
    small_nonzero_series,
    small_series,
)


def g(e):
    """Exponent from a number (rank 1) or a tuple."""
    return GroupElement.of(*e) if isinstance(e, tuple) else GroupElement.of(e)


def poly(terms, cutoff=None, rank=None):
    """Series from {exponent: coefficient}; exponents as in :func:`g`."""
    items = [(g(e), Fraction(c)) for e, c in terms.items()]
    if rank is None:
        rank = items[0][0].rank if items else (g(cutoff).rank if cutoff is not None else 1)
    return Series.build(rank, items, EXACT if cutoff is None else Cutoff(g(cutoff)))


ONE = poly({0: 1})


# ============================================================================
# ARITHMETIC
# ============================================================================

def test_build_normalises():
    s = Series.build(1, [(g(1), 2), (g(-1), 1), (g(1), -2)])
    assert s.terms == ((g(-1), Fraction(1)),)
    assert Series.zero(1).is_zero()
    assert not Series.zero(1, Cutoff(g(2))).is_zero()


def test_add_cancels():
    assert poly({-1: 1, 0: 1}) + poly({-1: -1, 1: 1}) == poly({0: 1, 1: 1})
    assert poly({2: 5}) + Series.zero(1) == poly({2: 5})


def test_add_absorbs_terms_above_the_cutoff():
    assert poly({0: 1}, cutoff=2) + poly({3: 1}) == poly({0: 1}, cutoff=2)


def test_mul():
    assert poly({0: 1, 1: 1}) * poly({0: 1, 1: -1}) == poly({0: 1, 2: -1})
    assert poly({-1: 3, 4: 1}) * ONE == poly({-1: 3, 4: 1})


def test_mul_shifts_the_cutoff():
    assert poly({-1: 1}, cutoff=1) * poly({2: 1}) == poly({1: 1}, cutoff=3)


def test_mul_by_exact_zero_is_exact():
    assert (poly({0: 1}, cutoff=1) * Series.zero(1)).is_zero()


def test_scaling_and_powers():
    assert 2 * poly({1: 1}) == poly({1: 2})
    assert poly({0: 1, 1: 1}) ** 3 == poly({0: 1, 1: 3, 2: 3, 3: 1})
    assert poly({5: 2}) ** 0 == ONE
    with pytest.raises(UsageError):
        poly({1: 1}) ** -1


def test_shift_and_truncate():
    a = poly({0: 1, 1: 2}, cutoff=3)
    assert shift(a, g(-1)) == poly({-1: 1, 0: 2}, cutoff=2)
    assert truncate(a, Cutoff(g(1))) == poly({0: 1}, cutoff=1)
    assert truncate(a, EXACT) == a


def test_cutoff_order():
    assert Cutoff(g(1)) < Cutoff(g(2)) < EXACT
    assert min(EXACT, Cutoff(g(-1))) == Cutoff(g(-1))
    assert default_cutoff(2, 3) == Cutoff(g((0, 3)))


# ============================================================================
# VALUATION AND ORDER
# ============================================================================

def test_s_val():
    assert s_val(poly({-2: 3, 0: 5, 1: 1})) == g(-2)
    assert s_val(poly({(0, 1): 1, (1, 0): 1})) == g((0, 1))


def test_s_val_errors():
    with pytest.raises(ZeroHasNoValue):
        s_val(Series.zero(1))
    with pytest.raises(ValueAboveCutoff):
        s_val(Series.zero(1, Cutoff(g(2))))


def test_s_cmp():
    assert s_cmp(poly({-1: 1}), poly({0: 1000})) is Order.GREATER
    assert s_cmp(poly({1: 1}), poly({1: 1})) is Order.EQUAL
    assert s_cmp(poly({0: -1}), poly({5: 1})) is Order.LESS


def test_s_cmp_of_truncated_tails_is_ambiguous():
    a = poly({0: 1}, cutoff=1)
    with pytest.raises(AmbiguousComparison):
        s_cmp(a, a)


def test_residue():
    assert residue(poly({0: 5, 1: 1})) == 5
    assert residue(poly({1: 1})) == 0
    with pytest.raises(NotInValuationRing):
        residue(poly({-1: 1, 0: 1}))
    with pytest.raises(CutoffTooCoarse):
        residue(Series.zero(1, Cutoff(g(0))))


# ============================================================================
# EXPANSIONS AND INVERSION
# ============================================================================

def test_terms_needed():
    assert terms_needed(g(1), Cutoff(g(3))) == 3
    assert terms_needed(g(2), Cutoff(g(3))) == 2
    assert terms_needed(g("1/2"), Cutoff(g(3))) == 6
    assert terms_needed(g(1), Cutoff(g(0))) == 0
    assert terms_needed(g((1, 0)), Cutoff(g((0, 3)))) == 1
    assert terms_needed(g((1, 1)), Cutoff(g((2, 3)))) == 3


def test_terms_needed_errors():
    with pytest.raises(NonTerminatingExpansion):
        terms_needed(g(1), EXACT)
    with pytest.raises(NonTerminatingExpansion, match=r"no multiple of \(0,1\) reaches \(1,0\)"):
        terms_needed(g((0, 1)), Cutoff(g((1, 0))))
    with pytest.raises(NonTerminatingExpansion):
        terms_needed(g(Fraction(1, 10000)), Cutoff(g(3)))


def test_power_sum_errors():
    with pytest.raises(NotInfinitesimal):
        power_sum(poly({0: 1}), lambda n: Fraction(1), Cutoff(g(3)))
    with pytest.raises(CutoffTooCoarse):
        power_sum(poly({1: 1}, cutoff=2), lambda n: Fraction(1), Cutoff(g(3)))


def test_invert():
    assert s_invert(poly({0: 2}), Cutoff(g(3))) == poly({0: "1/2"})
    assert s_invert(poly({-1: 1}), Cutoff(g(3))) == poly({1: 1})
    assert s_invert(poly({0: 1, 1: 1}), Cutoff(g(3))) == poly({0: 1, 1: -1, 2: 1}, cutoff=3)


def test_monomial_times_its_inverse_is_exactly_one():
    for a in (ONE, poly({-2: 3}), poly({(1, "-1/2"): "-2/5"})):
        product = a * s_invert(a, depth_cutoff(a.rank, 10))
        assert product.cutoff == EXACT
        assert product == Series.one(a.rank)


def test_invert_zero():
    with pytest.raises(ZeroDivision):
        s_invert(Series.zero(1), Cutoff(g(3)))
    with pytest.raises(ZeroDivisionError):
        s_invert(Series.zero(2), Cutoff(g((0, 3))))


def test_invert_of_truncated_input_needs_enough_terms():
    with pytest.raises(CutoffTooCoarse):
        s_invert(poly({0: 1, 1: 1}, cutoff=2), Cutoff(g(3)))
    assert s_invert(poly({0: 1, 1: 1}, cutoff=2), Cutoff(g(2))) == poly({0: 1, 1: -1}, cutoff=2)


# ============================================================================
# DECOMPOSITIONS
# ============================================================================

def test_decompose_additive():
    parts = decompose_additive(poly({-2: 1, 0: 5, 1: 1}))
    assert (parts.infinite_part, parts.bounded_part) == (poly({-2: 1}), poly({0: 5, 1: 1}))

    parts = decompose_additive(poly({0: 7}))
    assert parts.infinite_part.is_zero()
    assert parts.bounded_part == poly({0: 7})


def test_decompose_additive_uses_the_lex_sign():
    parts = decompose_additive(poly({(-1, 3): 1, (0, -1): 1}))
    assert parts.infinite_part == poly({(-1, 3): 1, (0, -1): 1})
    assert parts.bounded_part.is_zero()


def test_decompose_additive_of_truncated_series():
    parts = decompose_additive(poly({-1: 1, 0: 2}, cutoff=1))
    assert parts.infinite_part == poly({-1: 1})
    assert parts.bounded_part == poly({0: 2}, cutoff=1)


def test_decompose_multiplicative():
    parts = decompose_multiplicative(poly({-2: 3, -1: 3}))
    assert (parts.value, parts.lead, parts.one_unit_tail) == (g(-2), 3, poly({1: 1}))

    parts = decompose_multiplicative(ONE)
    assert (parts.value, parts.lead) == (g(0), 1)
    assert parts.one_unit_tail.is_zero()

    parts = decompose_multiplicative(poly({"1/2": 2}))
    assert (parts.value, parts.lead) == (g("1/2"), 2)


def test_decompose_multiplicative_needs_positive():
    with pytest.raises(NotPositive):
        decompose_multiplicative(poly({0: -1}))


def test_minus_w():
    assert minus_w(poly({3: 4})) == g(-3)
    assert minus_w(ONE) == g(0)
    assert minus_w(poly({-1: 1, 0: 1})) == g(1)
    assert minus_w(poly({3: 4})) == s_val(s_invert(poly({3: 4}), Cutoff(g(10))))


# ============================================================================
# REGROUPING
# ============================================================================

def test_regroup():
    nested = regroup(poly({(1, 0): 1, (1, 5): 2, (2, -1): 1}), ConvexLevel(1))
    assert nested.outer == ((g(1), poly({0: 1, 5: 2})), (g(2), poly({-1: 1})))

    assert regroup(poly({(0, 0): 3}), ConvexLevel(1)).outer == ((g(0), poly({0: 3})),)
    assert regroup(poly({(0, -1): 1}), ConvexLevel(1)).outer == ((g(0), poly({-1: 1})),)


def test_regroup_levels():
    with pytest.raises(InvalidLevel):
        regroup(poly({(1, 0): 1}), ConvexLevel(0))
    with pytest.raises(InvalidLevel):
        regroup(poly({(1, 0): 1}), ConvexLevel(2))


def test_flatten():
    a = poly({(1, 0): 1, (2, -1): 1})
    assert flatten(regroup(a, ConvexLevel(1))) == a
    assert flatten(NestedSeries(ConvexLevel(1), 2)).is_zero()
    nested = NestedSeries(ConvexLevel(1), 2, ((g(1), poly({-1: 1, 0: 1})),))
    assert flatten(nested) == poly({(1, -1): 1, (1, 0): 1})


def test_nested_compare_of_truncated_series():
    a = regroup(poly({(0, 0): 1}, cutoff=(0, 2)), ConvexLevel(1))
    b = regroup(poly({(0, 0): 1, (0, 3): 1}), ConvexLevel(1))
    with pytest.raises(AmbiguousComparison):
        a.compare(b)
    c = regroup(poly({(0, 0): 1, (0, 1): 1}), ConvexLevel(1))
    assert a.compare(c) is Order.LESS


def test_coarse_valuation():
    a = poly({(0, -1): 1, (0, 0): 3, (1, 0): 1})
    assert coarse_val(a, ConvexLevel(1)) == g(0)
    assert coarse_residue(a, ConvexLevel(1)) == poly({-1: 1, 0: 3})
    with pytest.raises(NotInValuationRing):
        coarse_residue(poly({(-1, 0): 1}), ConvexLevel(1))


def test_coarse_residue_keeps_the_inner_cutoff():
    a = poly({(0, 0): 1}, cutoff=(0, 3))
    assert coarse_residue(a, ConvexLevel(1)) == poly({0: 1}, cutoff=3)
    assert coarse_residue(poly({(0, 0): 1}, cutoff=(1, 0)), ConvexLevel(1)) == poly({0: 1})
    with pytest.raises(CutoffTooCoarse):
        coarse_residue(Series.zero(2, Cutoff(g((-1, 0)))), ConvexLevel(1))


# ============================================================================
# FIELD AND VALUATION PROPERTIES
# ============================================================================

@settings(max_examples=FIELD_EXAMPLES)
@given(ranked(small_series, count=3))
def test_field_axioms(triple):
    a, b, c = triple
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()


@settings(max_examples=FIELD_EXAMPLES)
@given(ranked(small_nonzero_series))
def test_inverse_up_to_ten_terms(a):
    target = depth_cutoff(a.rank, 10)
    inverse = s_invert(a, target.shift(-s_val(a)))
    product = a * inverse
    assert product.cutoff in (target, EXACT)
    assert truncate(product, target) == truncate(Series.one(a.rank), target)


@settings(max_examples=FIELD_EXAMPLES)
@given(ranked(small_nonzero_series, count=2))
def test_valuation_axioms(pair):
    a, b = pair
    assert s_val(a * b) == s_val(a) + s_val(b)
    total = a + b
    if not total.is_zero():
        assert s_val(total) >= min(s_val(a), s_val(b))
        if s_val(a) != s_val(b):
            assert s_val(total) == min(s_val(a), s_val(b))


def _abs(a):
    return a if s_cmp(a, Series.zero(a.rank)) is not Order.LESS else -a


@settings(max_examples=FIELD_EXAMPLES)
@given(ranked(small_nonzero_series, count=2))
def test_valuation_is_convex(pair):
    a, b = (_abs(x) for x in pair)
    if s_cmp(a, b) is not Order.LESS:
        assert s_val(a) <= s_val(b)


@settings(max_examples=MINUS_W_EXAMPLES)
@given(ranked(positive_series, count=2))
def test_minus_w_is_the_value_map(pair):
    a, b = pair
    unit = GroupElement.unit(a.rank, a.rank)
    assert minus_w(a) == s_val(s_invert(a, Cutoff(minus_w(a) + unit)))
    assert minus_w(a * b) == minus_w(a) + minus_w(b)
    if s_cmp(a, b) is not Order.GREATER:
        assert minus_w(a) <= minus_w(b)


@settings(max_examples=FIELD_EXAMPLES)
@given(ranked(exact_series))
def test_decomposition_properties(a):
    parts = decompose_additive(a)
    assert parts.infinite_part + parts.bounded_part == a
    assert all(e.sign() < 0 for e in parts.infinite_part.exponents)
    assert all(e.sign() >= 0 for e in parts.bounded_part.exponents)


@settings(max_examples=MINUS_W_EXAMPLES)
@given(ranked(positive_series))
def test_multiplicative_decomposition_reconstructs(a):
    parts = decompose_multiplicative(a)
    rebuilt = Series.monomial(parts.value, parts.lead) * (Series.one(a.rank) + parts.one_unit_tail)
    assert rebuilt == a
    assert parts.lead > 0
    assert all(e.sign() > 0 for e in parts.one_unit_tail.exponents)


@settings(max_examples=REGROUP_EXAMPLES)
@given(ranked(exact_series, count=2, min_rank=2), st.data())
def test_regroup_round_trip_and_order(pair, data):
    a, b = pair
    level = ConvexLevel(data.draw(st.integers(min_value=1, max_value=a.rank - 1)))
    assert flatten(regroup(a, level)) == a
    assert regroup(a, level).compare(regroup(b, level)) is s_cmp(a, b)
