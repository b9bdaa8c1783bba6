"""
DSSS spread/despread and code correlation.

Chips are real +/-1 at baseband; despreading accepts real or complex chip
streams so the harness can pass faded, jammed samples straight through.
"""
import csv
import logging
from pathlib import Path
from typing import Iterable, Union

import numpy as np

from core.exceptions import OutputError, ValidationError
from schemas.dsss import SpreadingCode

logger = logging.getLogger(__name__)


def spread(symbols: np.ndarray, code: SpreadingCode) -> np.ndarray:
    symbols = np.asarray(symbols)
    if symbols.ndim != 1 or symbols.size == 0:
        raise ValidationError("spread needs a nonempty 1-D symbol sequence")
    return np.outer(symbols, code.chips).ravel()


def despread(chips: np.ndarray, code: SpreadingCode) -> np.ndarray:
    """
    Per-symbol decision statistic (1/L) * sum_j chips[iL + j] * code[j].
    """
    chips = np.asarray(chips)
    L = code.length
    if chips.ndim != 1 or chips.size == 0 or chips.size % L:
        raise ValidationError(f"chip stream of length {chips.size} is not a multiple of L={L}")
    return chips.reshape(-1, L) @ code.chips.astype(np.float64) / L


def code_correlation(c1: SpreadingCode, c2: SpreadingCode) -> float:
    if c1.length != c2.length:
        raise ValidationError(f"code lengths differ: {c1.length} != {c2.length}")
    return float(np.dot(c1.chips.astype(np.int64), c2.chips.astype(np.int64))) / c1.length


def periodic_autocorrelation(code: SpreadingCode) -> np.ndarray:
    """
    Normalized periodic autocorrelation at every shift 0..L-1, computed by
    FFT and rounded back to the exact integer sums.
    """
    spectrum = np.fft.fft(code.chips.astype(np.float64))
    sums = np.rint(np.fft.ifft(spectrum * np.conj(spectrum)).real)
    return sums / code.length


def export_codes_csv(path: Union[str, Path], codes: Iterable[SpreadingCode]) -> int:
    """
    One CSV row per code: poly label, seed, then the +/-1 chips.
    """
    count = 0
    try:
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            for code in codes:
                label = code.poly.label if code.poly is not None else ""
                seed = "" if code.seed is None else code.seed
                writer.writerow([label, seed, *(int(c) for c in code.chips)])
                count += 1
    except OSError as e:
        raise OutputError(f"cannot write spreading codes: {e}", path=str(path))
    logger.info(f"Exported {count} spreading codes to {path}")
    return count
