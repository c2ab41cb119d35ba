"""
Shared fixtures and hypothesis strategies for the hahnlog test suites.
"""

import os
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from core.explog import CrossSection
from core.hahnseries import Cutoff, Series, is_positive, s_scale
from core.lexprod import SupportMap
from core.ordgroup import GroupElement

# ============================================================================
# HYPOTHESIS PROFILES
# ============================================================================

settings.register_profile(
    "hahnlog",
    max_examples=100,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("quick", parent=settings.get_profile("hahnlog"), max_examples=20)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "hahnlog"))

# Example counts of the acceptance suites
FIELD_EXAMPLES = 500
MINUS_W_EXAMPLES = 200
CROSS_SECTION_EXAMPLES = 500
ROUND_TRIP_EXAMPLES = 100
NON_SURJECTIVE_EXAMPLES = 1000
REGROUP_EXAMPLES = 300
PARSER_EXAMPLES = 500


# ============================================================================
# STRATEGIES
# ============================================================================

ranks = st.integers(min_value=1, max_value=3)

coefficients = st.builds(
    Fraction,
    st.integers(min_value=-1000, max_value=1000),
    st.integers(min_value=1, max_value=1000),
)
nonzero_coefficients = coefficients.filter(bool)

# For suites dominated by products and deep expansions
small_coefficients = st.builds(
    Fraction,
    st.integers(min_value=-20, max_value=20).filter(bool),
    st.integers(min_value=1, max_value=6),
)

coordinates = st.builds(
    Fraction,
    st.integers(min_value=-6, max_value=6),
    st.integers(min_value=1, max_value=2),
)


def group_elements(rank: int) -> st.SearchStrategy:
    return st.lists(coordinates, min_size=rank, max_size=rank).map(
        lambda coords: GroupElement(tuple(coords))
    )


def positive_elements(rank: int) -> st.SearchStrategy:
    return group_elements(rank).filter(lambda g: g.sign() > 0)


def exact_series(
    rank: int,
    min_terms: int = 0,
    max_terms: int = 6,
    coeffs: st.SearchStrategy = nonzero_coefficients
) -> st.SearchStrategy:
    return st.dictionaries(
        group_elements(rank), coeffs, min_size=min_terms, max_size=max_terms
    ).map(lambda terms: Series.build(rank, terms))


def nonzero_series(rank: int) -> st.SearchStrategy:
    return exact_series(rank, min_terms=1)


def small_series(rank: int, min_terms: int = 0) -> st.SearchStrategy:
    """At most four terms with small coefficients, for the field and valuation suites."""
    return exact_series(rank, min_terms, max_terms=4, coeffs=small_coefficients)


def small_nonzero_series(rank: int) -> st.SearchStrategy:
    return small_series(rank, min_terms=1)


def positive_series(rank: int) -> st.SearchStrategy:
    return nonzero_series(rank).map(lambda s: s if is_positive(s) else -s)


def monic_positive_series(rank: int) -> st.SearchStrategy:
    """Positive series with leading coefficient 1."""
    return nonzero_series(rank).map(lambda s: s_scale(1 / s.terms[0][1], s))


def infinitesimals(rank: int, max_terms: int = 6) -> st.SearchStrategy:
    return st.dictionaries(
        positive_elements(rank), nonzero_coefficients, min_size=0, max_size=max_terms
    ).map(lambda coeffs: Series.build(rank, coeffs))


def truncated_series(rank: int) -> st.SearchStrategy:
    return st.tuples(exact_series(rank), group_elements(rank)).map(
        lambda pair: Series.build(pair[0].rank, pair[0].terms, Cutoff(pair[1]))
    )


@st.composite
def ranked(draw, strategy_for_rank, count: int = 1, min_rank: int = 1, max_rank: int = 3):
    """Draw a rank, then ``count`` values of that rank."""
    rank = draw(st.integers(min_value=min_rank, max_value=max_rank))
    values = tuple(draw(strategy_for_rank(rank)) for _ in range(count))
    return values[0] if count == 1 else values


support_maps = st.dictionaries(
    st.integers(min_value=0, max_value=8),
    st.integers(min_value=-3, max_value=3),
    max_size=5,
).map(SupportMap.of)

index_sets = st.frozensets(st.integers(min_value=0, max_value=8), max_size=4)


# Seeded samples for checks that need many cheap cases

def sample_group_element(rng: random.Random, rank: int) -> GroupElement:
    return GroupElement(tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 2)) for _ in range(rank)))


def sample_positive_series(rng: random.Random, rank: int, max_terms: int = 4) -> Series:
    terms = {
        sample_group_element(rng, rank): Fraction(rng.choice([-1, 1]) * rng.randint(1, 50), rng.randint(1, 10))
        for _ in range(rng.randint(1, max_terms))
    }
    s = Series.build(rank, terms)
    return s if is_positive(s) else -s


def depth_cutoff(rank: int, depth: int) -> Cutoff:
    """depth * e_r."""
    return Cutoff(GroupElement.unit(rank, rank) * depth)


# ============================================================================
# FIXTURES
# ============================================================================

@pytest.fixture
def cs1():
    return CrossSection.default(1)


@pytest.fixture
def cs2():
    return CrossSection.default(2)
