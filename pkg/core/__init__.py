"""
Core Package for hahnlog
Ordered exponent groups, lexicographic products, Hahn series and the
logarithm/exponential layer built on them.
"""

from .errors import HahnError, UsageError
from .ordgroup import ArchClass, ConvexLevel, GroupElement, INFINITY, Order
from .hahnseries import (
    EXACT,
    Cutoff,
    NestedSeries,
    Series,
    decompose_additive,
    decompose_multiplicative,
    regroup,
    s_cmp,
    s_invert,
    s_val,
)
from .lexprod import ChainExhausted, EmbeddingOracle, NotConvex, SupportMap, oplus, refute_convexity
from .oracles import build_oracle
from .explog import CrossSection, LogMode, LogResult, full_exp, full_log, right_log

__all__ = [
    # Errors
    'HahnError',
    'UsageError',

    # Exponent group
    'ArchClass',
    'ConvexLevel',
    'GroupElement',
    'INFINITY',
    'Order',

    # Series
    'EXACT',
    'Cutoff',
    'NestedSeries',
    'Series',
    'decompose_additive',
    'decompose_multiplicative',
    'regroup',
    's_cmp',
    's_invert',
    's_val',

    # Lexicographic products
    'ChainExhausted',
    'EmbeddingOracle',
    'NotConvex',
    'SupportMap',
    'oplus',
    'refute_convexity',
    'build_oracle',

    # Logarithm and exponential
    'CrossSection',
    'LogMode',
    'LogResult',
    'full_exp',
    'full_log',
    'right_log',
]
