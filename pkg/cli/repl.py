"""
Interactive Session for hahnlog
A Session holds the configuration and the named bindings; ``execute``
turns one input line into a command result. ``repl`` runs the interactive
loop and ``run_script`` the batch mode.
"""

import sys
from pathlib import Path
from typing import Dict, List, Optional, TextIO, Union

from config.settings import APP_CONFIG, DISPLAY_CONFIG, EXIT_CODES
from core.errors import HahnError, UsageError
from core.hahnseries import Series
from cli.commands import (
    Cmp,
    CommandResult,
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
from cli.formatting import format_series
from cli.parser import parse_expr
from utils.helpers import parse_params, validate_identifier
from utils.logger import log_info
from utils.script_loader import load_script

VERBS = (
    "let", "inv", "log", "exp", "explog", "cmp", "decompose", "regroup",
    "refute", "witness", "in-image", "terms", "val", "oplus",
)

OK = EXIT_CODES["ok"]


class Session:
    """Configuration plus ``let`` bindings; nothing else is remembered."""

    def __init__(self, config: SessionConfig):
        self.config = config
        self.bindings: Dict[str, Series] = {}
        self.finished = False

    # ---------------------------------------------------------------- lines

    def execute(self, line: str) -> CommandResult:
        """
        Run one REPL line.

        Args:
            line: Raw input line

        Returns:
            CommandResult; errors never escape so the loop can continue
        """
        text = line.strip()
        if not text or text.startswith("#"):
            return CommandResult("", OK)
        try:
            if text.startswith(":"):
                return self._meta(text)
            verb, _, rest = text.partition(" ")
            if verb == "let":
                return self._let(rest)
            if verb in VERBS:
                return run_command(self._command(verb, rest.strip()), self.config, self.bindings)
            return run_command(Eval(text), self.config, self.bindings)
        except HahnError as e:
            return CommandResult("", e.exit_status, e.render())

    def _meta(self, text: str) -> CommandResult:
        words = text[1:].split()
        if not words:
            raise UsageError("empty meta command")
        name, args = words[0], words[1:]
        if name in ("quit", "q", "exit"):
            self.finished = True
            return CommandResult("", OK)
        if name == "set":
            if len(args) < 2:
                raise UsageError(":set needs a name and a value")
            self.config = self.config.with_setting(args[0], " ".join(args[1:]))
            if args[0] == "rank" and self.bindings:
                self.bindings.clear()
                log_info("Rank changed: bindings cleared")
            return CommandResult(self.config.describe(), OK)
        if name == "show":
            lines = [self.config.describe()]
            lines.extend(f"{k} = {format_series(v)}" for k, v in sorted(self.bindings.items()))
            return CommandResult("\n".join(lines), OK)
        raise UsageError(f"unknown meta command ':{name}'")

    def _let(self, rest: str) -> CommandResult:
        name, sep, expr = rest.partition("=")
        name = name.strip()
        if not sep:
            raise UsageError("let needs the form: let NAME = EXPR")
        is_valid, message = validate_identifier(name)
        if not is_valid or name in VERBS:
            raise UsageError(message or f"'{name}' is a command name")
        value = parse_expr(expr.strip(), self.config.rank, self.bindings)
        self.bindings[name] = value
        return CommandResult(f"{name} = {format_series(value)}", OK)

    def _command(self, verb: str, rest: str) -> object:
        if verb == "witness":
            return Witness()
        if not rest:
            raise UsageError(f"'{verb}' needs an argument")
        if verb == "inv":
            return Invert(rest)
        if verb == "log":
            return Log(rest)
        if verb == "exp":
            return Exp(rest)
        if verb == "explog":
            return ExpOfLog(rest)
        if verb == "in-image":
            return InImage(rest)
        if verb == "terms":
            return Terms(rest)
        if verb == "val":
            return Val(rest)
        if verb == "cmp":
            left, sep, right = rest.partition(" vs ")
            if not sep:
                raise UsageError("cmp needs the form: cmp A vs B")
            return Cmp(left.strip(), right.strip())
        if verb == "decompose":
            expr, _, kind = rest.rpartition(" ")
            if kind in ("additive", "multiplicative"):
                return Decompose(expr.strip(), kind)
            return Decompose(rest)
        if verb == "regroup":
            expr, _, level = rest.rpartition(" ")
            if not level.isdigit():
                raise UsageError("regroup needs the form: regroup A J")
            return Regroup(expr.strip(), int(level))
        if verb == "refute":
            return self._refute(rest.split())
        if verb == "oplus":
            close = rest.find("}")
            if close < 0:
                raise UsageError("oplus needs the form: oplus {i:v, ...} {i, ...}")
            return Oplus(rest[:close + 1], rest[close + 1:].strip())
        raise UsageError(f"unknown command '{verb}'")

    @staticmethod
    def _refute(words: List[str]) -> RefuteConvexity:
        name, steps, pairs = words[0], None, []
        for word in words[1:]:
            if "=" in word:
                pairs.append(word)
            elif word.isdigit() and steps is None:
                steps = int(word)
            else:
                raise UsageError(f"unexpected refute argument '{word}'")
        params, message = parse_params(pairs)
        if message:
            raise UsageError(message)
        if steps is None:
            return RefuteConvexity(name, tuple(sorted(params.items())))
        return RefuteConvexity(name, tuple(sorted(params.items())), steps)


# ============================================================================
# LOOPS
# ============================================================================

def _emit(result: CommandResult, out: TextIO, err: TextIO) -> None:
    if result.text:
        print(result.text, file=out)
    if result.error:
        print(result.error, file=err)


def repl(
    config: SessionConfig,
    stdin: Optional[TextIO] = None,
    out: Optional[TextIO] = None,
    err: Optional[TextIO] = None
) -> int:
    """
    Interactive loop. Errors are reported and the loop continues; the
    prompt and banner are shown only on a terminal.

    Returns:
        Exit status 0
    """
    stdin, out, err = stdin or sys.stdin, out or sys.stdout, err or sys.stderr
    interactive = stdin.isatty()
    session = Session(config)

    if interactive:
        print(DISPLAY_CONFIG["repl_banner"].format(version=APP_CONFIG["version"]), file=out)
    while not session.finished:
        if interactive:
            print(DISPLAY_CONFIG["repl_prompt"], end="", file=out, flush=True)
        line = stdin.readline()
        if not line:
            break
        _emit(session.execute(line), out, err)
    return OK


def run_script(
    path: Union[str, Path],
    config: SessionConfig,
    out: Optional[TextIO] = None,
    err: Optional[TextIO] = None
) -> int:
    """
    Batch mode: run a script's lines in one session and stop at the first
    error.

    Returns:
        0, or the exit status of the failing line
    """
    out, err = out or sys.stdout, err or sys.stderr
    session = Session(config)
    for number, line in enumerate(load_script(path), start=1):
        result = session.execute(line)
        if result.text:
            print(result.text, file=out)
        if result.error:
            print(f"line {number}: {result.error}", file=err)
            return result.status
        if session.finished:
            break
    return OK
