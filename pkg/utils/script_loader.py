"""
Script Loader Module for hahnlog
Loads batch scripts (one REPL line per line) from disk.
"""

from pathlib import Path
from typing import List, Union

from utils.logger import log_info, LogOperation


# ============================================================================
# SCRIPT LOADING
# ============================================================================

def load_script(path: Union[str, Path]) -> List[str]:
    """
    Read a batch script.

    Blank lines and lines starting with ``#`` are kept, so that line numbers
    in error messages match the file; the session treats them as no-ops.

    Args:
        path: Path to the script file

    Returns:
        The script's lines without trailing newlines

    Raises:
        FileNotFoundError: If the script doesn't exist
        UnicodeDecodeError: If the script isn't UTF-8
    """
    path = Path(path)

    try:
        with LogOperation(f"Loading script from {path}"):
            lines = path.read_text(encoding="utf-8").splitlines()
            log_info(f"Loaded {len(lines)} script lines successfully")
            return lines

    except FileNotFoundError:
        log_info(f"Script file not found: {path}")
        raise
    except UnicodeDecodeError:
        log_info(f"Script file is not valid UTF-8: {path}")
        raise
