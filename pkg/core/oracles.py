"""
Built-in Embedding Oracles for hahnlog
Named, parameterised embeddings of cofinal subsets of N into Z^N for the
convexity refuter. The command line only exposes these; programmatic
callers may pass any EmbeddingOracle.
"""

from itertools import count
from typing import Callable, Dict, Mapping, Optional

from config.settings import ORACLE_CONFIG
from core.errors import UnknownOracle, UsageError
from core.lexprod import EmbeddingOracle, SupportMap
from utils.logger import log_debug


def _single_entry(m: SupportMap, index: Optional[int] = None) -> Optional[tuple]:
    """The only (index, value) entry of ``m``, or None."""
    if len(m.entries) != 1:
        return None
    entry = m.entries[0]
    if index is not None and entry[0] != index:
        return None
    return entry


# ============================================================================
# HONEST ORACLES
# ============================================================================

def shifted_singleton(offset: int = 1) -> EmbeddingOracle:
    """n -> {0: n + offset} on all of N."""

    def forward(n: int) -> SupportMap:
        return SupportMap.of({0: n + offset})

    def inverse(m: SupportMap) -> Optional[int]:
        if not m.entries:
            value = 0
        else:
            entry = _single_entry(m, index=0)
            if entry is None:
                return None
            value = entry[1]
        n = value - offset
        return n if n >= 0 else None

    return EmbeddingOracle("shifted-singleton", forward, inverse, lambda: count(0))


def moving_support(value: int = -1) -> EmbeddingOracle:
    """
    n -> {n: value} on all of N.

    Only negative values give an increasing map; positive values are
    accepted so the refuter can report the inconsistency.
    """
    if value == 0:
        raise UsageError("moving-support needs a nonzero value")

    def forward(n: int) -> SupportMap:
        return SupportMap.of({n: value})

    def inverse(m: SupportMap) -> Optional[int]:
        entry = _single_entry(m)
        if entry is None or entry[1] != value:
            return None
        return entry[0]

    return EmbeddingOracle("moving-support", forward, inverse, lambda: count(0))


def stutter(period: int = 2) -> EmbeddingOracle:
    """n -> {0: ceil(n / period) + 1} on the multiples of ``period``."""
    if period < 1:
        raise UsageError(f"stutter period must be >= 1, got {period}")

    def forward(n: int) -> SupportMap:
        return SupportMap.of({0: -(-n // period) + 1})

    def inverse(m: SupportMap) -> Optional[int]:
        entry = _single_entry(m, index=0)
        if entry is None or entry[1] < 1:
            return None
        return (entry[1] - 1) * period

    return EmbeddingOracle("stutter", forward, inverse, lambda: count(0, period))


# ============================================================================
# DISHONEST ORACLE
# ============================================================================

def overclaiming(base: int = 1_000_000) -> EmbeddingOracle:
    """
    Same forward map as shifted-singleton, but the inverse claims that
    every element outside the image is the image of a fresh index taken
    increasingly from ``base``. Claims are memoised so repeated queries
    get the same answer.
    """
    honest = shifted_singleton(1)
    claims: Dict[SupportMap, int] = {}
    fresh = count(base)

    def inverse(m: SupportMap) -> Optional[int]:
        n = honest.inverse(m)
        if n is not None:
            return n
        if m not in claims:
            claims[m] = next(fresh)
            log_debug(f"overclaiming oracle: claims {m} = forward({claims[m]})")
        return claims[m]

    return EmbeddingOracle("overclaiming", honest.forward, inverse, honest.domain)


# ============================================================================
# REGISTRY
# ============================================================================

_BUILDERS: Dict[str, Callable[..., EmbeddingOracle]] = {
    "shifted-singleton": shifted_singleton,
    "moving-support": moving_support,
    "stutter": stutter,
    "overclaiming": overclaiming,
}


def build_oracle(name: str, params: Optional[Mapping[str, int]] = None) -> EmbeddingOracle:
    """
    Build a built-in oracle by name.

    Args:
        name: One of the names in ORACLE_CONFIG
        params: Integer parameters overriding the configured defaults

    Returns:
        A fresh EmbeddingOracle (stateful oracles are never shared)

    Raises:
        UnknownOracle: Unknown name
        UsageError: Unknown or invalid parameter
    """
    if name not in _BUILDERS:
        raise UnknownOracle(f"'{name}' (known: {', '.join(sorted(_BUILDERS))})")

    merged = dict(ORACLE_CONFIG[name])
    for key, value in (params or {}).items():
        if key not in merged:
            raise UsageError(f"oracle '{name}' has no parameter '{key}'")
        merged[key] = int(value)
    return _BUILDERS[name](**merged)
