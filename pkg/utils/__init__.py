"""
Utilities Package for hahnlog
Contains helper modules for logging, validation, number formatting and
script loading. The pandas table builders live in utils.tables and are
imported directly.
"""

from .logger import (
    setup_logger,
    configure_logging,
    log_info,
    log_warning,
    log_error,
    log_debug,
    log_critical,
    LogOperation
)
from .helpers import (
    validate_rank,
    validate_precision,
    validate_max_steps,
    validate_mode,
    validate_identifier,
    parse_params,
    format_rational,
    format_decimal
)
from .script_loader import load_script

__all__ = [
    # Logger
    'setup_logger',
    'configure_logging',
    'log_info',
    'log_warning',
    'log_error',
    'log_debug',
    'log_critical',
    'LogOperation',

    # Helpers
    'validate_rank',
    'validate_precision',
    'validate_max_steps',
    'validate_mode',
    'validate_identifier',
    'parse_params',
    'format_rational',
    'format_decimal',

    # Script loader
    'load_script',
]
