import json
import math
import logging
import numpy as np
import pandas as pd
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
from umbraq.utilities import constants


logger = logging.getLogger(__name__)



def format_significant(value, digits: int = constants.CSV_SIGNIFICANT_DIGITS) -> str:
    """
    Decimal (never exponent) notation with `digits` significant digits; trailing zeros are trimmed.

    Example:
        >>> format_significant(1.0 / 3.0)
        '0.333333333333'
    """
    if isinstance(value, str):
        return value
    value = float(value)
    if not math.isfinite(value):
        return str(value)
    return np.format_float_positional(value, precision=digits, unique=False, fractional=False, trim="-")



def write_csv(df: pd.DataFrame, path: str) -> str:
    """Writes df with a header row and every number through format_significant."""
    df.map(format_significant).to_csv(path, index=False, lineterminator="\n", encoding="utf-8")
    logger.info("wrote %d rows to %s", len(df), path)
    return path



def sanitize(obj):
    """Replaces NaN and infinities by None and numpy scalars by Python ones, recursively."""
    if isinstance(obj, dict):
        return {str(k): sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [sanitize(v) for v in obj]
    if isinstance(obj, np.generic):
        obj = obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj



def dumps_json(payload) -> str:
    """Stable JSON text: sorted keys and a fixed indent, so parsing and re-serializing is byte-identical."""
    return json.dumps(sanitize(payload), sort_keys=True, indent=2, allow_nan=False) + "\n"



def write_svg(curves: list[tuple[str, np.ndarray, np.ndarray]], path: str, xlabel: str, ylabel: str,
              equal_aspect: bool = False) -> str:
    """
    Renders (label, x, y) polylines to an SVG file.

    The output is reproducible: the SVG id hash salt is fixed and no date is written.
    """
    plt.rcParams["svg.hashsalt"] = constants.SVG_HASH_SALT
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    try:
        for label, x, y in curves:
            ax.plot(x, y, label=label, linewidth=1.2)
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        ax.axhline(0.0, color="grey", linewidth=0.5)
        if equal_aspect:
            ax.set_aspect("equal", adjustable="datalim")
        ax.legend(loc="best")
        fig.savefig(path, format="svg", metadata={"Date": None})
    finally:
        plt.close(fig)
    logger.info("wrote %d curve(s) to %s", len(curves), path)
    return path
