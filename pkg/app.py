"""
hahnlog - Main Application Entry Point
Command-line front end for exact computation in generalized power series
fields: logarithms and exponentials, decompositions, regrouping and the
convexity refuter.
"""

import argparse
import sys
from typing import List, Optional

from config.settings import APP_CONFIG, EXIT_CODES, LOG_CONFIG, REFUTER_CONFIG, VALID_MODES, VALID_ORACLES
from core.errors import HahnError, UsageError
from cli.commands import (
    Cmp,
    Decompose,
    Eval,
    Exp,
    ExpOfLog,
    InImage,
    Invert,
    Log,
    Oplus,
    RefuteConvexity,
    Regroup,
    SessionConfig,
    Terms,
    Val,
    Witness,
    run_command,
)
from cli.repl import repl, run_script
from utils.helpers import parse_params
from utils.logger import configure_logging, log_critical, log_info


# ============================================================================
# ARGUMENT PARSING
# ============================================================================

def _common_options() -> argparse.ArgumentParser:
    """Session flags accepted by every subcommand."""
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("session")
    group.add_argument("--rank", type=int, default=None, help="rank r of the exponent group Q^r (default 1)")
    group.add_argument("--cutoff", default=None, help="target cutoff: exponent, t^e or 'exact' (default 3*e_r)")
    group.add_argument("--mode", choices=VALID_MODES, default=None, help="base logarithm mode")
    group.add_argument("--precision", type=int, default=None, help="dyadic precision p (error below 2^-p)")
    group.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logging")
    group.add_argument("--log-file", default=None, help="also write log records to this file")
    return common


def build_parser() -> argparse.ArgumentParser:
    """Create the argument parser with one subcommand per command."""
    parser = argparse.ArgumentParser(prog=APP_CONFIG["prog"], description=APP_CONFIG["description"])
    parser.add_argument("--version", action="version", version=f"%(prog)s {APP_CONFIG['version']}")
    common = _common_options()
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help_text, description=help_text)

    add("eval", "print an expression in canonical form").add_argument("expr")
    add("log", "full logarithm: h-part | log(c) | series part").add_argument("expr")
    add("exp", "partial exponential (inverse of log)").add_argument("expr")
    add("explog", "exp(log(a)) round trip with symbolic constants").add_argument("expr")
    add("invert", "multiplicative inverse up to the cutoff").add_argument("expr")
    add("val", "canonical valuation w(a)").add_argument("expr")
    add("terms", "table of the terms of a series").add_argument("expr")
    add("in-image", "is the purely infinite part in the image of h?").add_argument("expr")
    add("witness", "an element whose purely infinite part is not in h(G)")

    cmp_parser = add("cmp", "compare two series in the field order")
    cmp_parser.add_argument("left")
    cmp_parser.add_argument("right")

    decompose = add("decompose", "additive or multiplicative decomposition")
    decompose.add_argument("expr")
    decompose.add_argument("kind", nargs="?", default="additive", choices=["additive", "multiplicative"])

    regroup_parser = add("regroup", "regroup over the convex subgroup H_j")
    regroup_parser.add_argument("expr")
    regroup_parser.add_argument("level", type=int)

    oplus_parser = add("oplus", "d (+) S on a support map literal")
    oplus_parser.add_argument("support_map", help="e.g. '{0:1, 2:-1}'")
    oplus_parser.add_argument("index_set", help="e.g. '{1, 2}'")

    refute = add("refute-convexity", "run the convexity refuter against a built-in oracle")
    refute.add_argument(
        "oracle",
        help=(
            f"one of: {', '.join(VALID_ORACLES)}. "
            "moving-support sends n to {n:-1} unless --param value=V is given "
            "(value=1 gives an order-reversing map)"
        ),
    )
    refute.add_argument("--steps", type=int, default=REFUTER_CONFIG["default_max_steps"])
    refute.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    refute.add_argument("--trace", action="store_true", help="print every inverse query")

    add("repl", "interactive session")
    add("run", "run a script of REPL lines, stopping at the first error").add_argument("script")
    return parser


# ============================================================================
# COMMAND CONSTRUCTION
# ============================================================================

def build_command(args: argparse.Namespace) -> object:
    """Map parsed arguments onto a command dataclass."""
    simple = {
        "eval": Eval, "log": Log, "exp": Exp, "explog": ExpOfLog, "invert": Invert,
        "val": Val, "terms": Terms, "in-image": InImage,
    }
    if args.command in simple:
        return simple[args.command](args.expr)
    if args.command == "witness":
        return Witness()
    if args.command == "cmp":
        return Cmp(args.left, args.right)
    if args.command == "decompose":
        return Decompose(args.expr, args.kind)
    if args.command == "regroup":
        return Regroup(args.expr, args.level)
    if args.command == "oplus":
        return Oplus(args.support_map, args.index_set)
    if args.command == "refute-convexity":
        params, message = parse_params(args.param)
        if message:
            raise UsageError(message)
        return RefuteConvexity(args.oracle, tuple(sorted(params.items())), args.steps, args.trace)
    raise UsageError(f"unknown command '{args.command}'")


def _log_level(verbosity: int) -> str:
    if verbosity >= 2:
        return LOG_CONFIG["debug_level"]
    if verbosity == 1:
        return LOG_CONFIG["verbose_level"]
    return LOG_CONFIG["default_level"]


# ============================================================================
# MAIN
# ============================================================================

def main(argv: Optional[List[str]] = None) -> int:
    """
    Run the command line.

    Args:
        argv: Arguments without the program name (default sys.argv[1:])

    Returns:
        Exit status: 0 ok, 1 domain error, 2 usage error
    """
    args = build_parser().parse_args(argv)
    configure_logging(_log_level(args.verbose), args.log_file)

    try:
        config = SessionConfig.from_settings(args.rank, args.cutoff, args.mode, args.precision)
        if args.command == "repl":
            return repl(config)
        if args.command == "run":
            return run_script(args.script, config)
        result = run_command(build_command(args), config)
    except HahnError as e:
        print(e.render(), file=sys.stderr)
        return e.exit_status
    except (FileNotFoundError, UnicodeDecodeError) as e:
        print(UsageError(str(e)).render(), file=sys.stderr)
        return EXIT_CODES["usage_error"]
    except Exception as e:
        log_critical(f"Unexpected failure: {e}")
        print(f"error: internal error: {e}", file=sys.stderr)
        return EXIT_CODES["domain_error"]

    if result.text:
        print(result.text)
    if result.error:
        log_info(f"{args.command} failed with status {result.status}")
        print(result.error, file=sys.stderr)
    return result.status


if __name__ == "__main__":
    sys.exit(main())
