import os
import pathlib
import tempfile
from typing import Union

import numpy as np

from .constants import OUTPUT_DIGITS


def format_float(value: float, digits: int = OUTPUT_DIGITS) -> str:
    """Formats a float with a fixed number of significant digits."""
    return f"{value:.{digits}g}"


def round_significant(values: np.ndarray, digits: int = OUTPUT_DIGITS) -> np.ndarray:
    """Rounds every entry to the significant digits written by format_float."""
    values = np.asarray(values, dtype=float)
    rounded = [float(format_float(value, digits)) for value in values.ravel()]
    return np.array(rounded).reshape(values.shape)


def write_atomic(content: str, filename: Union[pathlib.Path, str]) -> pathlib.Path:
    """
    Writes text to a file in one step: the content goes to a temporary file in the
    target folder, which is then renamed over the target. Readers never observe a
    partially written report.

    Args:
        content: Text to write.
        filename: Output filename to write to (e.g. "report.csv").

    Returns:
        Path of the written file.

    """
    outputfile = pathlib.Path(filename)
    outputfile.parent.mkdir(parents=True, exist_ok=True)

    handle, tmp_name = tempfile.mkstemp(
        dir=str(outputfile.parent), prefix=f".{outputfile.name}.", suffix=".tmp"
    )
    try:
        with os.fdopen(handle, "w", encoding="utf8") as fh:
            fh.write(content)
        os.replace(tmp_name, outputfile)
    except BaseException:
        pathlib.Path(tmp_name).unlink(missing_ok=True)
        raise

    return outputfile
