"""
Tables Module for hahnlog
Builds pandas DataFrames for term listings and refuter traces and renders
them as fixed-width text.
"""

from typing import Callable, Dict, Iterable, Optional

import pandas as pd

from core.hahnseries import Series
from core.lexprod import RefutationStep
from core.ordgroup import nat_val
from utils.logger import log_debug

TERM_COLUMNS = ["exponent", "coefficient", "class"]
NOT_IN_IMAGE = "not in image"
TRACE_COLUMNS = ["iteration", "row", "nu", "lower_pre", "upper_pre", "beta", "S", "middle", "answer"]


# ============================================================================
# FRAME BUILDERS
# ============================================================================

def terms_frame(series: Series) -> pd.DataFrame:
    """
    One row per stored term of ``series``, in ascending exponent order.

    Args:
        series: Series to list

    Returns:
        DataFrame with columns exponent, coefficient and archimedean class
    """
    rows = [
        {"exponent": g, "coefficient": c, "class": str(nat_val(g))}
        for g, c in series.terms
    ]
    df = pd.DataFrame(rows, columns=TERM_COLUMNS, dtype=object)
    log_debug(f"Built term table with {len(df)} rows")
    return df


def trace_frame(trace: Iterable[RefutationStep]) -> pd.DataFrame:
    """One row per inverse query made by the convexity refuter."""
    rows = [
        {
            "iteration": step.iteration,
            "row": step.row,
            "nu": step.nu,
            "lower_pre": step.lower_pre,
            "upper_pre": step.upper_pre,
            "beta": step.beta,
            "S": "{" + ", ".join(str(i) for i in step.indices) + "}",
            "middle": step.middle,
            "answer": NOT_IN_IMAGE if step.answer is None else step.answer,
        }
        for step in trace
    ]
    df = pd.DataFrame(rows, columns=TRACE_COLUMNS, dtype=object)
    log_debug(f"Built trace table with {len(df)} rows")
    return df


# ============================================================================
# RENDERING
# ============================================================================

def render_frame(
    df: pd.DataFrame,
    formatters: Optional[Dict[str, Callable[[object], str]]] = None,
    empty_text: str = "(empty)"
) -> str:
    """
    Render a frame as left-aligned fixed-width text without the index.

    Args:
        df: Frame to render
        formatters: Per-column cell formatters (default str)
        empty_text: Text for a frame without rows

    Returns:
        Rendered table
    """
    if df.empty:
        return empty_text
    cells = {
        column: (formatters or {}).get(column, str)
        for column in df.columns
    }
    return df.to_string(index=False, formatters=cells, justify="left")
