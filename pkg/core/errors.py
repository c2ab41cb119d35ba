"""
Error Hierarchy for hahnlog
Every error carries a stable code, a stable message phrase and the exit
status the command-line front end reports for it.
"""

from typing import Optional, Tuple

from config.settings import EXIT_CODES

DOMAIN = EXIT_CODES["domain_error"]
USAGE = EXIT_CODES["usage_error"]


class HahnError(Exception):
    """Base class of all library errors."""

    code = "E000"
    message = "hahnlog error"
    exit_status = DOMAIN

    def __init__(self, detail: Optional[str] = None):
        self.detail = detail
        text = self.message if not detail else f"{self.message}: {detail}"
        super().__init__(text)

    def render(self) -> str:
        """Render as the single line the CLI prints."""
        return f"error {self.code}: {self}"


# ============================================================================
# GROUP / ORDER ERRORS
# ============================================================================

class RankMismatch(HahnError):
    code = "E101"
    message = "rank mismatch"
    exit_status = USAGE


class InvalidLevel(HahnError):
    code = "E102"
    message = "invalid convex level"
    exit_status = USAGE


class InvalidClass(HahnError):
    code = "E103"
    message = "invalid archimedean class"


# ============================================================================
# SERIES ERRORS
# ============================================================================

class ZeroHasNoValue(HahnError):
    code = "E201"
    message = "zero has no value"


class ValueAboveCutoff(HahnError):
    code = "E202"
    message = "value above cutoff"


class AmbiguousComparison(HahnError):
    code = "E203"
    message = "ambiguous comparison"


class ZeroDivision(HahnError, ZeroDivisionError):
    code = "E204"
    message = "division by zero"


class CutoffTooCoarse(HahnError):
    code = "E205"
    message = "cutoff too coarse"


class NonTerminatingExpansion(HahnError):
    code = "E206"
    message = "non-terminating expansion"


class NotInValuationRing(HahnError):
    code = "E207"
    message = "not in valuation ring"


class NotPositive(HahnError):
    code = "E208"
    message = "not positive"


# ============================================================================
# LOGARITHM ERRORS
# ============================================================================

class NotInLogDomain(HahnError):
    code = "E301"
    message = "not in log domain"


class ConstantNotExponentiable(HahnError):
    code = "E302"
    message = "constant not exponentiable"


class NotInfinitesimal(HahnError):
    code = "E303"
    message = "not infinitesimal"


class TruncatedInput(HahnError):
    code = "E304"
    message = "truncated input"


class ModeMismatch(HahnError):
    code = "E305"
    message = "mode mismatch"


class InvalidCrossSection(HahnError):
    code = "E306"
    message = "invalid cross-section"
    exit_status = USAGE


# ============================================================================
# REFUTER ERRORS
# ============================================================================

class OracleInconsistent(HahnError):
    code = "E401"
    message = "oracle inconsistent"


class DomainExhausted(HahnError):
    code = "E402"
    message = "domain exhausted"


class InvariantViolation(HahnError):
    code = "E403"
    message = "invariant violated"


class UnknownOracle(HahnError):
    code = "E404"
    message = "unknown oracle"
    exit_status = USAGE


# ============================================================================
# INPUT ERRORS
# ============================================================================

class ExprSyntaxError(HahnError):
    code = "E501"
    message = "syntax error"
    exit_status = USAGE

    def __init__(self, detail: str, position: Optional[Tuple[int, int]] = None,
                 source: Optional[str] = None):
        self.position = position
        self.source = source
        where = f" at column {position[0] + 1}" if position else ""
        super().__init__(f"{detail}{where}")

    def render(self) -> str:
        line = super().render()
        if self.position is None or self.source is None:
            return line
        start, end = self.position
        marker = " " * start + "^" * max(1, end - start)
        return f"{line}\n  {self.source}\n  {marker}"


class UnknownName(HahnError):
    code = "E502"
    message = "unknown name"
    exit_status = USAGE


class UsageError(HahnError):
    code = "E601"
    message = "usage error"
    exit_status = USAGE
