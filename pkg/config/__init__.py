"""
Configuration Package for hahnlog
Contains centralized settings and constants.
"""

from .settings import (
    APP_CONFIG,
    SESSION_DEFAULTS,
    VALID_MODES,
    EXPANSION_CONFIG,
    REFUTER_CONFIG,
    ORACLE_CONFIG,
    VALID_ORACLES,
    EXIT_CODES,
    LOG_CONFIG,
    DISPLAY_CONFIG,
    VALIDATION_RULES
)

__all__ = [
    'APP_CONFIG',
    'SESSION_DEFAULTS',
    'VALID_MODES',
    'EXPANSION_CONFIG',
    'REFUTER_CONFIG',
    'ORACLE_CONFIG',
    'VALID_ORACLES',
    'EXIT_CODES',
    'LOG_CONFIG',
    'DISPLAY_CONFIG',
    'VALIDATION_RULES'
]
