"""
Logger Module for hahnlog
Provides centralized logging for the library and the command-line front end.
Records go to stderr so that command output on stdout stays deterministic.
"""

import logging
import sys
from pathlib import Path
from datetime import datetime
from typing import Optional, Union

from config.settings import LOG_CONFIG

# ============================================================================
# LOGGER CONFIGURATION
# ============================================================================

def _resolve_level(log_level: Union[int, str]) -> int:
    if isinstance(log_level, str):
        return logging.getLevelName(log_level.upper())
    return log_level


def setup_logger(
    name: str = LOG_CONFIG["logger_name"],
    log_level: Union[int, str] = LOG_CONFIG["default_level"],
    log_file: Optional[Path] = LOG_CONFIG["log_file"]
) -> logging.Logger:
    """
    Set up and configure the application logger.

    Args:
        name: Logger name
        log_level: Logging level (name or numeric value)
        log_file: Optional path to log file

    Returns:
        Configured logger instance
    """
    level = _resolve_level(log_level)
    logger = logging.getLogger(name)
    logger.setLevel(level)
    logger.propagate = False

    # Prevent duplicate handlers
    if logger.handlers:
        return logger

    formatter = logging.Formatter(
        fmt=LOG_CONFIG["format"],
        datefmt=LOG_CONFIG["date_format"]
    )

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if log_file:
        _add_file_handler(logger, Path(log_file), level, formatter)

    return logger


def _add_file_handler(
    logger: logging.Logger,
    log_file: Path,
    level: int,
    formatter: logging.Formatter
) -> None:
    log_file.parent.mkdir(parents=True, exist_ok=True)
    file_handler = logging.FileHandler(log_file, encoding='utf-8')
    file_handler.setLevel(level)
    file_handler.setFormatter(formatter)
    logger.addHandler(file_handler)


def configure_logging(
    log_level: Union[int, str],
    log_file: Optional[Path] = None
) -> logging.Logger:
    """
    Re-apply level (and optionally a log file) to the default logger.
    Used by the CLI after its flags are parsed.

    Args:
        log_level: New logging level
        log_file: Optional path to an additional log file

    Returns:
        The reconfigured logger
    """
    level = _resolve_level(log_level)
    logger.setLevel(level)
    for handler in logger.handlers:
        handler.setLevel(level)

    if log_file:
        known = {
            getattr(h, "baseFilename", None) for h in logger.handlers
        }
        if str(Path(log_file).resolve()) not in known:
            formatter = logger.handlers[0].formatter if logger.handlers else None
            _add_file_handler(
                logger,
                Path(log_file),
                level,
                formatter or logging.Formatter(LOG_CONFIG["format"])
            )
    return logger


# ============================================================================
# DEFAULT LOGGER INSTANCE
# ============================================================================

logger = setup_logger()


# ============================================================================
# CONVENIENCE FUNCTIONS
# ============================================================================

def log_info(message: str) -> None:
    """Log info message."""
    logger.info(message)


def log_warning(message: str) -> None:
    """Log warning message."""
    logger.warning(message)


def log_error(message: str, exc_info: bool = False) -> None:
    """
    Log error message.

    Args:
        message: Error message
        exc_info: Include exception information
    """
    logger.error(message, exc_info=exc_info)


def log_debug(message: str) -> None:
    """Log debug message."""
    logger.debug(message)


def log_critical(message: str, exc_info: bool = True) -> None:
    """
    Log critical message.

    Args:
        message: Critical message
        exc_info: Include exception information
    """
    logger.critical(message, exc_info=exc_info)


# ============================================================================
# CONTEXT MANAGERS
# ============================================================================

class LogOperation:
    """Context manager for logging operation start and end."""

    def __init__(self, operation_name: str):
        self.operation_name = operation_name
        self.start_time = None

    def __enter__(self):
        self.start_time = datetime.now()
        log_info(f"Starting operation: {self.operation_name}")
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        duration = (datetime.now() - self.start_time).total_seconds()

        if exc_type is not None:
            # The caller reports the error itself.
            log_debug(
                f"Operation failed: {self.operation_name} "
                f"(duration: {duration:.2f}s) - {exc_val}"
            )
            return False

        log_info(
            f"Completed operation: {self.operation_name} "
            f"(duration: {duration:.2f}s)"
        )
        return False
