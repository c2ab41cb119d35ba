"""
Helper Utilities Module for hahnlog
Validation helpers returning (is_valid, error_message) tuples and small
number formatting functions shared by the command-line front end.
"""

import re
from fractions import Fraction
from typing import Dict, Iterable, Tuple

from config.settings import VALID_MODES, VALIDATION_RULES
from utils.logger import log_debug


# ============================================================================
# RANGE VALIDATION
# ============================================================================

def _validate_int_range(name: str, value: object, bounds: Tuple[int, int]) -> Tuple[bool, str]:
    try:
        number = int(value)
    except (ValueError, TypeError):
        return False, f"Invalid {name} value: {value}"
    if isinstance(value, float) and value != number:
        return False, f"Invalid {name} value: {value}"

    low, high = bounds
    if not low <= number <= high:
        return False, f"{name.capitalize()} must be between {low} and {high}, got {number}"
    return True, ""


def validate_rank(rank: object) -> Tuple[bool, str]:
    """
    Validate an exponent group rank.

    Args:
        rank: Rank value

    Returns:
        Tuple of (is_valid, error_message)
    """
    return _validate_int_range("rank", rank, VALIDATION_RULES["rank_range"])


def validate_precision(precision: object) -> Tuple[bool, str]:
    """Validate a dyadic precision exponent."""
    return _validate_int_range("precision", precision, VALIDATION_RULES["precision_range"])


def validate_max_steps(steps: object) -> Tuple[bool, str]:
    """Validate the refuter iteration budget."""
    return _validate_int_range("max steps", steps, VALIDATION_RULES["max_steps_range"])


def validate_mode(mode: str) -> Tuple[bool, str]:
    """Validate a base-logarithm mode name."""
    if mode not in VALID_MODES:
        return False, f"Mode must be one of {', '.join(VALID_MODES)}, got '{mode}'"
    return True, ""


def validate_identifier(name: str) -> Tuple[bool, str]:
    """
    Validate a REPL binding name.

    Args:
        name: Proposed identifier

    Returns:
        Tuple of (is_valid, error_message)
    """
    if not re.match(VALIDATION_RULES["identifier_pattern"], name or ""):
        return False, f"Invalid identifier: '{name}'"
    if name in VALIDATION_RULES["reserved_names"]:
        return False, f"'{name}' is reserved"
    return True, ""


# ============================================================================
# PARAMETER PARSING
# ============================================================================

def parse_params(pairs: Iterable[str]) -> Tuple[Dict[str, int], str]:
    """
    Parse oracle parameters given as ``key=value`` strings.

    Args:
        pairs: Strings like "offset=2"

    Returns:
        Tuple of (parameters, error_message); the message is empty on success
    """
    params: Dict[str, int] = {}
    for pair in pairs:
        key, sep, raw = pair.partition("=")
        if not sep or not key.strip():
            return {}, f"Parameter must look like key=value, got '{pair}'"
        try:
            params[key.strip()] = int(raw.strip())
        except ValueError:
            return {}, f"Parameter '{key.strip()}' needs an integer value, got '{raw}'"
    log_debug(f"Parsed oracle parameters: {params}")
    return params, ""


# ============================================================================
# NUMBER FORMATTING
# ============================================================================

def format_rational(q: Fraction) -> str:
    """Reduced fraction, integers without denominator: 3, -3/2."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_decimal(q: Fraction, digits: int) -> str:
    """
    Format a rational with a fixed number of decimals, rounding half away
    from zero.

    Args:
        q: Rational value
        digits: Number of digits after the point

    Returns:
        Decimal string
    """
    q = Fraction(q)
    scale = 10 ** digits
    magnitude = abs(q) * scale
    scaled = int(magnitude)
    if magnitude - scaled >= Fraction(1, 2):
        scaled += 1
    sign = "-" if q < 0 and scaled else ""
    whole, frac = divmod(scaled, scale)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def decimal_digits_for(precision: int) -> int:
    """Decimal digits that resolve a 2^-precision grid (about 0.30103 * p, plus one)."""
    return max(1, (precision * 30103) // 100000 + 1)
