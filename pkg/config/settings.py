"""
Configuration Settings for hahnlog
Centralized configuration for session defaults, expansion limits, the
convexity refuter, exit codes, logging and display.
"""

from pathlib import Path
from typing import Dict, Any

# ============================================================================
# PATH CONFIGURATION
# ============================================================================
BASE_DIR = Path(__file__).parent.parent
GOLDEN_DIR = BASE_DIR / "tests" / "golden"

# ============================================================================
# APP CONFIGURATION
# ============================================================================
APP_CONFIG: Dict[str, Any] = {
    "prog": "hahnlog",
    "version": "1.0.0",
    "description": (
        "Exact arithmetic in generalized power series fields k((G)), "
        "logarithmic cross-sections and the convexity refuter"
    ),
}

# ============================================================================
# SESSION DEFAULTS
# ============================================================================
SESSION_DEFAULTS: Dict[str, Any] = {
    "rank": 1,
    "mode": "symbolic",
    "precision": 20,
    # Default cutoff is cutoff_depth * e_r (least significant coordinate).
    "cutoff_depth": 3,
}

VALID_MODES = ["symbolic", "dyadic"]

# ============================================================================
# SERIES EXPANSION LIMITS
# ============================================================================
EXPANSION_CONFIG: Dict[str, Any] = {
    "max_terms": 4096,  # cap on n in sum_n c_n * x^n
}

# ============================================================================
# CONVEXITY REFUTER
# ============================================================================
REFUTER_CONFIG: Dict[str, Any] = {
    "default_max_steps": 10,
    "max_domain_scan": 100_000,  # enumerated elements inspected per search
}

# Built-in embedding oracles and their default integer parameters
ORACLE_CONFIG: Dict[str, Dict[str, int]] = {
    "shifted-singleton": {"offset": 1},
    "moving-support": {"value": -1},
    "stutter": {"period": 2},
    "overclaiming": {"base": 1_000_000},
}

VALID_ORACLES = list(ORACLE_CONFIG.keys())

# ============================================================================
# EXIT CODES
# ============================================================================
EXIT_CODES: Dict[str, int] = {
    "ok": 0,
    "domain_error": 1,
    "usage_error": 2,
}

# ============================================================================
# LOGGING
# ============================================================================
LOG_CONFIG: Dict[str, Any] = {
    "logger_name": "hahnlog",
    "default_level": "WARNING",
    "verbose_level": "INFO",
    "debug_level": "DEBUG",
    "log_file": None,
    "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    "date_format": "%Y-%m-%d %H:%M:%S",
}

# ============================================================================
# DISPLAY SETTINGS
# ============================================================================
DISPLAY_CONFIG: Dict[str, Any] = {
    "series_variable": "t",
    "inner_variable": "u",
    "repl_prompt": "hahn> ",
    "repl_banner": "hahnlog {version} - type :quit to leave",
}

# ============================================================================
# VALIDATION RULES
# ============================================================================
VALIDATION_RULES: Dict[str, Any] = {
    "rank_range": (1, 16),
    "precision_range": (1, 4096),
    "max_steps_range": (1, 10_000),
    "identifier_pattern": r"^[A-Za-z_][A-Za-z0-9_]*$",
    "reserved_names": ("t", "O"),
}
