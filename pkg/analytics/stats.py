"""
Statistical helpers for the acceptance suites.
"""
import math
from typing import Tuple

import numpy as np
from scipy import special, stats

from core import bits as bitops
from core.exceptions import ValidationError


def wilson_interval(successes: int, trials: int, confidence: float = 0.95) -> Tuple[float, float]:
    if trials < 1 or not 0 <= successes <= trials:
        raise ValidationError(f"invalid binomial sample {successes}/{trials}")
    ci = stats.binomtest(successes, trials).proportion_ci(confidence_level=confidence, method="wilson")
    return float(ci.low), float(ci.high)


def binomial_band(p: float, trials: int, sigmas: float = 3.0) -> Tuple[float, float]:
    """p +/- sigmas * sqrt(p(1-p)/trials), clipped to [0, 1]."""
    half = sigmas * math.sqrt(p * (1.0 - p) / trials)
    return max(0.0, p - half), min(1.0, p + half)


def monobit_test(bits: np.ndarray) -> float:
    """Frequency test p-value."""
    bits = bitops.as_bits(bits)
    n = bits.size
    if n == 0:
        raise ValidationError("monobit test needs at least one bit")
    s = 2 * int(bits.sum()) - n
    return float(special.erfc(abs(s) / math.sqrt(2.0 * n)))


def runs_test(bits: np.ndarray) -> float:
    """
    Runs test p-value; 0.0 when the frequency prerequisite already fails.
    """
    bits = bitops.as_bits(bits)
    n = bits.size
    if n < 2:
        raise ValidationError("runs test needs at least two bits")
    pi = bits.mean()
    if abs(pi - 0.5) >= 2.0 / math.sqrt(n):
        return 0.0
    runs = 1 + int(np.count_nonzero(bits[1:] != bits[:-1]))
    spread = 2.0 * n * pi * (1.0 - pi)
    return float(special.erfc(abs(runs - spread) / (2.0 * math.sqrt(2.0 * n) * pi * (1.0 - pi))))


def ks_exponential(samples: np.ndarray) -> float:
    return float(stats.kstest(np.asarray(samples), "expon").pvalue)
