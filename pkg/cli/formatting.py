"""
Canonical Printing for hahnlog
Deterministic text forms of group elements, series, nested series,
logarithm values and refuter witnesses. Printed exact series parse back
to themselves.
"""

from fractions import Fraction
from typing import Callable, Dict, List

from config.settings import DISPLAY_CONFIG
from core.explog import Dyadic, ExactZero, LogResult, LogValue, SymbolicLog
from core.hahnseries import (
    AdditiveDecomposition,
    Cutoff,
    MultDecomposition,
    NestedSeries,
    Series,
)
from core.lexprod import ChainExhausted, NotConvex, Witness
from core.ordgroup import GroupElement, Order
from utils.helpers import decimal_digits_for, format_decimal, format_rational

VARIABLE = DISPLAY_CONFIG["series_variable"]
INNER_VARIABLE = DISPLAY_CONFIG["inner_variable"]

ORDER_WORDS = {Order.LESS: "less", Order.EQUAL: "equal", Order.GREATER: "greater"}


# ============================================================================
# EXPONENTS AND SERIES
# ============================================================================

def format_group_element(g: GroupElement) -> str:
    """``q`` at rank 1, ``(q1,q2,...)`` otherwise."""
    return str(g)


def format_monomial(g: GroupElement, variable: str = VARIABLE) -> str:
    """t, t^-1, t^1/2, t^(1,-1/2); empty for the zero exponent."""
    if g.is_zero():
        return ""
    if g.rank == 1 and g.coords[0] == 1:
        return variable
    return f"{variable}^{format_group_element(g)}"


def _term_body(g: GroupElement, magnitude: Fraction, variable: str) -> str:
    mono = format_monomial(g, variable)
    if not mono:
        return format_rational(magnitude)
    if magnitude == 1:
        return mono
    return f"{format_rational(magnitude)}*{mono}"


def format_cutoff(cutoff: Cutoff, variable: str = VARIABLE) -> str:
    """O(t^3), O(t), O(1)."""
    if cutoff.bound is None:
        return ""
    return f"O({format_monomial(cutoff.bound, variable) or '1'})"


def format_series(s: Series, variable: str = VARIABLE) -> str:
    """
    Canonical text of a series: ascending exponents, reduced coefficients,
    `` + O(t^c)`` when truncated and ``0`` for exact zero.

    Args:
        s: Series to print
        variable: Name of the series variable

    Returns:
        Text accepted by the expression parser
    """
    parts: List[str] = []
    for g, c in s.terms:
        body = _term_body(g, abs(c), variable)
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f" - {body}" if c < 0 else f" + {body}")

    tail = format_cutoff(s.cutoff, variable)
    if tail:
        parts.append(f" + {tail}" if parts else tail)
    return "".join(parts) or "0"


def format_nested(nested: NestedSeries) -> str:
    """``{outer: inner, ...}`` with the inner series in the variable u."""
    entries = [
        f"{format_group_element(p)}: {format_series(inner, INNER_VARIABLE)}"
        for p, inner in nested.outer
    ]
    text = "{" + ", ".join(entries) + "}"
    tail = format_cutoff(nested.cutoff)
    return f"{text} + {tail}" if tail else text


# ============================================================================
# LOGARITHMS
# ============================================================================

def format_log_value(value: LogValue) -> str:
    """0, log(2), or a decimal with its certified radius."""
    if isinstance(value, ExactZero):
        return "0"
    if isinstance(value, SymbolicLog):
        return f"log({format_rational(value.argument)})"
    if isinstance(value, Dyadic):
        digits = decimal_digits_for(value.precision)
        return f"{format_decimal(value.approx, digits)} (+/- 2^-{value.precision})"
    raise TypeError(f"not a log value: {value!r}")


def format_log_result(result: LogResult) -> str:
    """``h-part | log(c) | small part``."""
    return " | ".join([
        format_series(result.infinite_part),
        format_log_value(result.const_part),
        format_series(result.small_part),
    ])


# ============================================================================
# DECOMPOSITIONS AND ORDER
# ============================================================================

def format_additive(parts: AdditiveDecomposition) -> str:
    return (
        f"infinite: {format_series(parts.infinite_part)}\n"
        f"bounded: {format_series(parts.bounded_part)}"
    )


def format_multiplicative(parts: MultDecomposition) -> str:
    return (
        f"value: {format_group_element(parts.value)}\n"
        f"lead: {format_rational(parts.lead)}\n"
        f"tail: {format_series(parts.one_unit_tail)}"
    )


def format_order(order: Order) -> str:
    return ORDER_WORDS[order]


# ============================================================================
# REFUTER WITNESSES
# ============================================================================

def format_witness(witness: Witness) -> str:
    """Multi-line report of a NotConvex or ChainExhausted witness."""
    if isinstance(witness, NotConvex):
        return "\n".join([
            f"not convex (iteration {witness.iterations})",
            f"lower:  {witness.lower} = forward({witness.lower_pre})",
            f"middle: {witness.middle} not in image",
            f"upper:  {witness.upper} = forward({witness.upper_pre})",
        ])
    if isinstance(witness, ChainExhausted):
        lines = [f"chain exhausted after {witness.steps} steps"]
        lines.extend(f"{i}: {m}" for i, m in enumerate(witness.chain, start=1))
        return "\n".join(lines)
    raise TypeError(f"not a witness: {witness!r}")


TERM_FORMATTERS: Dict[str, Callable[[object], str]] = {
    "exponent": format_group_element,
    "coefficient": format_rational,
}
