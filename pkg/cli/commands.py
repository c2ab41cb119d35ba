"""
Commands for hahnlog
Command variants, the session configuration and ``run_command``, which
dispatches a command to the library and renders its result.
"""

from dataclasses import dataclass, field, replace
from typing import Callable, Dict, Mapping, Optional, Tuple, Type

from config.settings import EXIT_CODES, REFUTER_CONFIG, SESSION_DEFAULTS
from core.errors import HahnError, UsageError
from core.explog import (
    CrossSection,
    LogMode,
    exp_of_log,
    full_exp,
    full_log,
    left_log_preimage,
    witness_not_in_image,
)
from core.hahnseries import (
    Cutoff,
    Series,
    decompose_additive,
    decompose_multiplicative,
    default_cutoff,
    regroup,
    s_cmp,
    s_invert,
    s_val,
)
from core.lexprod import oplus, refute_convexity
from core.oracles import build_oracle
from core.ordgroup import ConvexLevel, nat_val
from cli.formatting import (
    TERM_FORMATTERS,
    format_additive,
    format_group_element,
    format_log_result,
    format_multiplicative,
    format_nested,
    format_order,
    format_series,
    format_witness,
)
from cli.parser import parse_cutoff, parse_expr, parse_index_set, parse_support_map
from utils.helpers import validate_max_steps, validate_mode, validate_precision, validate_rank
from utils.logger import LogOperation, log_debug
from utils.tables import render_frame, terms_frame, trace_frame


# ============================================================================
# SESSION CONFIGURATION
# ============================================================================

@dataclass(frozen=True)
class SessionConfig:
    """Rank, default cutoff, log mode and precision shared by all commands."""

    rank: int
    cutoff: Cutoff
    mode: LogMode
    precision: int
    cross_section: CrossSection = field(compare=False, default=None)

    def __post_init__(self) -> None:
        if self.cross_section is None:
            object.__setattr__(self, "cross_section", CrossSection.default(self.rank))

    @classmethod
    def from_settings(
        cls,
        rank: Optional[int] = None,
        cutoff: Optional[str] = None,
        mode: Optional[str] = None,
        precision: Optional[int] = None
    ) -> "SessionConfig":
        """
        Build a validated configuration from SESSION_DEFAULTS and overrides.

        Raises:
            UsageError: An override is out of range
        """
        rank = SESSION_DEFAULTS["rank"] if rank is None else rank
        mode = mode or SESSION_DEFAULTS["mode"]
        precision = SESSION_DEFAULTS["precision"] if precision is None else precision

        for is_valid, message in (validate_rank(rank), validate_mode(mode), validate_precision(precision)):
            if not is_valid:
                raise UsageError(message)

        rank = int(rank)
        bound = (
            parse_cutoff(cutoff, rank) if cutoff is not None
            else default_cutoff(rank, SESSION_DEFAULTS["cutoff_depth"])
        )
        return cls(rank, bound, LogMode.parse(mode), int(precision))

    def with_rank(self, rank: int) -> "SessionConfig":
        """Same settings at another rank; the cutoff returns to its default."""
        is_valid, message = validate_rank(rank)
        if not is_valid:
            raise UsageError(message)
        rank = int(rank)
        return replace(
            self,
            rank=rank,
            cutoff=default_cutoff(rank, SESSION_DEFAULTS["cutoff_depth"]),
            cross_section=CrossSection.default(rank),
        )

    def with_setting(self, name: str, value: str) -> "SessionConfig":
        """Apply a ``:set NAME VALUE`` change."""
        if name == "rank":
            return self.with_rank(value)
        if name == "cutoff":
            return replace(self, cutoff=parse_cutoff(value, self.rank))
        if name == "mode":
            is_valid, message = validate_mode(value)
            if not is_valid:
                raise UsageError(message)
            return replace(self, mode=LogMode.parse(value))
        if name == "precision":
            is_valid, message = validate_precision(value)
            if not is_valid:
                raise UsageError(message)
            return replace(self, precision=int(value))
        raise UsageError(f"unknown setting '{name}' (rank, cutoff, mode, precision)")

    def describe(self) -> str:
        cutoff = "exact" if self.cutoff.is_exact else format_group_element(self.cutoff.bound)
        return (
            f"rank={self.rank} cutoff={cutoff} "
            f"mode={self.mode.value} precision={self.precision}"
        )


# ============================================================================
# COMMANDS
# ============================================================================

@dataclass(frozen=True)
class Eval:
    expr: str


@dataclass(frozen=True)
class Log:
    expr: str
    cutoff: Optional[str] = None


@dataclass(frozen=True)
class Exp:
    expr: str
    cutoff: Optional[str] = None


@dataclass(frozen=True)
class ExpOfLog:
    """exp of the logarithm of ``expr``: a round trip through full_log."""

    expr: str
    cutoff: Optional[str] = None


@dataclass(frozen=True)
class Invert:
    expr: str
    cutoff: Optional[str] = None


@dataclass(frozen=True)
class Cmp:
    left: str
    right: str


@dataclass(frozen=True)
class Decompose:
    expr: str
    kind: str = "additive"


@dataclass(frozen=True)
class Regroup:
    expr: str
    level: int


@dataclass(frozen=True)
class RefuteConvexity:
    oracle_name: str
    params: Tuple[Tuple[str, int], ...] = ()
    max_steps: int = REFUTER_CONFIG["default_max_steps"]
    trace: bool = False


@dataclass(frozen=True)
class Witness:
    pass


@dataclass(frozen=True)
class InImage:
    expr: str


@dataclass(frozen=True)
class Terms:
    expr: str


@dataclass(frozen=True)
class Oplus:
    support_map: str
    index_set: str


@dataclass(frozen=True)
class Val:
    expr: str


@dataclass(frozen=True)
class CommandResult:
    """Rendered output, exit status and the rendered error (if any)."""

    text: str
    status: int
    error: Optional[str] = None


# ============================================================================
# HANDLERS
# ============================================================================

Bindings = Mapping[str, Series]


def _target(cfg: SessionConfig, override: Optional[str]) -> Cutoff:
    return cfg.cutoff if override is None else parse_cutoff(override, cfg.rank)


def _eval(cmd: Eval, cfg: SessionConfig, env: Bindings) -> str:
    return format_series(parse_expr(cmd.expr, cfg.rank, env))


def _log(cmd: Log, cfg: SessionConfig, env: Bindings) -> str:
    a = parse_expr(cmd.expr, cfg.rank, env)
    result = full_log(cfg.cross_section, a, _target(cfg, cmd.cutoff), cfg.mode, cfg.precision)
    return format_log_result(result)


def _exp(cmd: Exp, cfg: SessionConfig, env: Bindings) -> str:
    x = parse_expr(cmd.expr, cfg.rank, env)
    return format_series(full_exp(cfg.cross_section, x, _target(cfg, cmd.cutoff), cfg.mode, cfg.precision))


def _exp_of_log(cmd: ExpOfLog, cfg: SessionConfig, env: Bindings) -> str:
    a = parse_expr(cmd.expr, cfg.rank, env)
    target = _target(cfg, cmd.cutoff)
    # The small part must reach target - w(a) for the product to reach target.
    log_target = target.shift(-s_val(a))
    result = full_log(cfg.cross_section, a, log_target, LogMode.SYMBOLIC, cfg.precision)
    return format_series(exp_of_log(cfg.cross_section, result, target))


def _invert(cmd: Invert, cfg: SessionConfig, env: Bindings) -> str:
    a = parse_expr(cmd.expr, cfg.rank, env)
    return format_series(s_invert(a, _target(cfg, cmd.cutoff)))


def _cmp(cmd: Cmp, cfg: SessionConfig, env: Bindings) -> str:
    left = parse_expr(cmd.left, cfg.rank, env)
    right = parse_expr(cmd.right, cfg.rank, env)
    return format_order(s_cmp(left, right))


def _decompose(cmd: Decompose, cfg: SessionConfig, env: Bindings) -> str:
    a = parse_expr(cmd.expr, cfg.rank, env)
    if cmd.kind == "additive":
        return format_additive(decompose_additive(a))
    if cmd.kind == "multiplicative":
        return format_multiplicative(decompose_multiplicative(a))
    raise UsageError(f"decomposition must be additive or multiplicative, got '{cmd.kind}'")


def _regroup(cmd: Regroup, cfg: SessionConfig, env: Bindings) -> str:
    a = parse_expr(cmd.expr, cfg.rank, env)
    return format_nested(regroup(a, ConvexLevel(int(cmd.level))))


def _refute(cmd: RefuteConvexity, cfg: SessionConfig, env: Bindings) -> str:
    is_valid, message = validate_max_steps(cmd.max_steps)
    if not is_valid:
        raise UsageError(message)
    oracle = build_oracle(cmd.oracle_name, dict(cmd.params))
    witness = refute_convexity(oracle, int(cmd.max_steps))
    text = format_witness(witness)
    if cmd.trace:
        table = render_frame(trace_frame(witness.trace), empty_text="(no queries)")
        text = f"{text}\n\n{table}"
    return text


def _witness(cmd: Witness, cfg: SessionConfig, env: Bindings) -> str:
    return format_series(witness_not_in_image(cfg.cross_section))


def _in_image(cmd: InImage, cfg: SessionConfig, env: Bindings) -> str:
    s = parse_expr(cmd.expr, cfg.rank, env)
    g = left_log_preimage(cfg.cross_section, s)
    return "false" if g is None else f"true (g = {format_group_element(g)})"


def _terms(cmd: Terms, cfg: SessionConfig, env: Bindings) -> str:
    a = parse_expr(cmd.expr, cfg.rank, env)
    table = render_frame(terms_frame(a), TERM_FORMATTERS, "(no terms)")
    if a.is_exact:
        return table
    return f"{table}\nknown below {format_group_element(a.cutoff.bound)}"


def _oplus(cmd: Oplus, cfg: SessionConfig, env: Bindings) -> str:
    return str(oplus(parse_support_map(cmd.support_map), parse_index_set(cmd.index_set)))


def _val(cmd: Val, cfg: SessionConfig, env: Bindings) -> str:
    g = s_val(parse_expr(cmd.expr, cfg.rank, env))
    return f"{format_group_element(g)} (class {nat_val(g)})"


HANDLERS: Dict[Type, Callable[..., str]] = {
    Eval: _eval,
    Log: _log,
    Exp: _exp,
    ExpOfLog: _exp_of_log,
    Invert: _invert,
    Cmp: _cmp,
    Decompose: _decompose,
    Regroup: _regroup,
    RefuteConvexity: _refute,
    Witness: _witness,
    InImage: _in_image,
    Terms: _terms,
    Oplus: _oplus,
    Val: _val,
}


def run_command(
    cmd: object,
    cfg: SessionConfig,
    bindings: Optional[Bindings] = None
) -> CommandResult:
    """
    Execute one command.

    Args:
        cmd: A command dataclass instance
        cfg: Session configuration
        bindings: Named series visible to expressions

    Returns:
        CommandResult with status 0, or the error's exit status and its
        ``error <code>: <message>`` rendering
    """
    handler = HANDLERS.get(type(cmd))
    if handler is None:
        raise TypeError(f"not a command: {cmd!r}")

    try:
        with LogOperation(f"{type(cmd).__name__} ({cfg.describe()})"):
            text = handler(cmd, cfg, bindings or {})
        return CommandResult(text, EXIT_CODES["ok"])
    except HahnError as e:
        log_debug(f"{type(cmd).__name__} failed with {e.code}")
        return CommandResult("", e.exit_status, e.render())
