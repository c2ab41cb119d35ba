"""
Command-Line Package for hahnlog
Expression parsing, canonical printing, commands and the REPL.
"""

from .parser import parse_expr, parse_cutoff
from .formatting import format_series, format_log_result
from .commands import SessionConfig, CommandResult, run_command
from .repl import Session, repl, run_script

__all__ = [
    'parse_expr',
    'parse_cutoff',
    'format_series',
    'format_log_result',
    'SessionConfig',
    'CommandResult',
    'run_command',
    'Session',
    'repl',
    'run_script',
]
