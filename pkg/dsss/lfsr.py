"""
Fibonacci LFSR for the recurrence a[k+n] = sum(c_i * a[k+i]) over GF(2).

The register holds a[k..k+n-1] with a[k] in bit 0; each shift outputs a[k].
For degrees up to FAST_PATH_MAX_DEGREE one full period is cached per
polynomial and any seed is served as a phase of that cycle.
"""
from functools import lru_cache
from typing import Tuple

import numpy as np

from core import bits as bitops
from core.exceptions import ValidationError
from schemas.dsss import PolyEntry, SpreadingCode

FAST_PATH_MAX_DEGREE = 16


def seed_state(seed: np.ndarray, degree: int) -> int:
    seed = bitops.as_bits(seed)
    if seed.size != degree:
        raise ValidationError(f"seed length {seed.size} != degree {degree}")
    state = 0
    for i, b in enumerate(seed):
        state |= int(b) << i
    if state == 0:
        raise ValidationError("the all-zero seed is the LFSR fixed point")
    return state


def step_bits(entry: PolyEntry, state: int, count: int) -> np.ndarray:
    """
    Shift the register count times and return the output bits.
    """
    n, mask = entry.degree, entry.tap_mask
    out = np.empty(count, dtype=np.uint8)
    for k in range(count):
        out[k] = state & 1
        feedback = bin(state & mask).count("1") & 1
        state = (state >> 1) | (feedback << (n - 1))
    return out


def measure_period(entry: PolyEntry) -> int:
    """
    Cycle length of the register started from state 1.
    """
    n, mask = entry.degree, entry.tap_mask
    state, steps = 1, 0
    while True:
        feedback = bin(state & mask).count("1") & 1
        state = (state >> 1) | (feedback << (n - 1))
        steps += 1
        if state == 1 or steps > (1 << n):
            return steps


@lru_cache(maxsize=256)
def _cycle(entry: PolyEntry) -> Tuple[np.ndarray, np.ndarray]:
    period = entry.period
    sequence = step_bits(entry, 1, period)
    windows = (np.arange(period)[:, None] + np.arange(entry.degree)[None, :]) % period
    states = (sequence[windows].astype(np.int64) << np.arange(entry.degree)).sum(axis=1)
    phase = np.full(1 << entry.degree, -1, dtype=np.int64)
    phase[states] = np.arange(period)
    return sequence, phase


def lfsr_bits(entry: PolyEntry, seed: np.ndarray, num_bits: int) -> np.ndarray:
    state = seed_state(seed, entry.degree)
    if entry.degree > FAST_PATH_MAX_DEGREE:
        return step_bits(entry, state, num_bits)
    sequence, phase = _cycle(entry)
    start = phase[state]
    if start < 0:
        # not on the main cycle, so the polynomial is not primitive
        return step_bits(entry, state, num_bits)
    return sequence[(start + np.arange(num_bits)) % sequence.size]


def lfsr_generate(entry: PolyEntry, seed: np.ndarray, num_chips: int) -> SpreadingCode:
    """
    num_chips output bits mapped to chips 1 - 2b; past one period the
    sequence simply continues cyclically.
    """
    if num_chips < 1:
        raise ValidationError("num_chips must be positive")
    chips = 1 - 2 * lfsr_bits(entry, seed, num_chips).astype(np.int8)
    return SpreadingCode(chips=chips, poly=entry, seed=bitops.to_int(seed))
