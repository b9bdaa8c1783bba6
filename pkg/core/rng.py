"""
Named random streams.

Every random draw in the lab comes from a numpy Generator derived from
(master_seed, trial_index, purpose). Streams for different purposes or trials
never share state, so trials can run in any order and still reproduce bit for
bit.
"""
import hashlib
from typing import Optional

import numpy as np


def derive_seed(master_seed: int, trial_index: Optional[int], purpose: str) -> int:
    """
    Hash (master_seed, trial_index, purpose) into a 256-bit integer seed.
    """
    if master_seed < 0:
        raise ValueError("master seed must be a non-negative integer")
    trial_part = "-" if trial_index is None else str(trial_index)
    material = f"{master_seed}|{trial_part}|{purpose}".encode("utf-8")
    return int.from_bytes(hashlib.sha256(material).digest(), "big")


def stream(master_seed: int, purpose: str, trial_index: Optional[int] = None) -> np.random.Generator:
    """
    Return the Generator dedicated to one purpose (and optionally one trial).
    """
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(derive_seed(master_seed, trial_index, purpose))))


class TrialStreams:
    """
    Lazily created per-purpose streams for one Monte Carlo trial.
    """

    def __init__(self, master_seed: int, trial_index: int):
        self.master_seed = master_seed
        self.trial_index = trial_index
        self._streams = {}

    def __getitem__(self, purpose: str) -> np.random.Generator:
        if purpose not in self._streams:
            self._streams[purpose] = stream(self.master_seed, purpose, self.trial_index)
        return self._streams[purpose]
