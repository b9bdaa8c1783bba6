"""
Chip-level jammer models: broadband Gaussian noise, rate-aware code
selection (RACS) and delayed replay.

Waveforms are complex baseband chip arrays for a single symbol. The
attacker is assumed chip-synchronous with the legitimate link.
"""
import logging
from collections import deque
from typing import List, Optional, Sequence, Tuple

import numpy as np

from core.config import settings
from core.exceptions import ResourceLimitError, ValidationError
from dsss.spreading import code_correlation
from dsss.ssg import code_from_seed_value, seed_value
from schemas.adversary import RacsNormalization
from schemas.dsss import PolyEntry, SpreadingCode

logger = logging.getLogger(__name__)


def racs_code_set(
    k_r: int,
    poly: PolyEntry,
    L: int = settings.SPREADING_LENGTH,
    exact: bool = settings.EXACT_MSEQ_LENGTH,
    cap: int = settings.RACS_CODE_CAP,
    exclude_seed: Optional[int] = None,
) -> List[SpreadingCode]:
    """
    One code per nonzero k_r-bit key value, built through the same SSG
    path as the legitimate code. exclude_seed drops every key whose LFSR
    seed equals it, so the result may be empty.
    """
    if k_r < 1:
        raise ValidationError("k_r must be at least 1")
    S = (1 << k_r) - 1
    if S > cap:
        raise ResourceLimitError(f"RACS code set of {S} codes exceeds cap {cap}")
    codes = [
        code_from_seed_value(poly, value, k_r, L, exact)
        for value in range(1, S + 1)
        if exclude_seed is None or seed_value(value, k_r, poly.degree) != exclude_seed
    ]
    logger.debug(f"Enumerated {len(codes)} RACS codes for k_r={k_r} on {poly.label}")
    return codes


def racs_seed_counts(k_r: int, degree: int, exclude_seed: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    Distinct LFSR seed values reached by the nonzero k_r-bit keys and how
    many keys land on each. Keys longer than the register keep only their
    leading `degree` bits, so several keys can share one seed.
    """
    values = np.arange(1, (1 << k_r), dtype=np.int64)
    seeds = values if k_r <= degree else values >> (k_r - degree)
    seeds = np.where(seeds == 0, 1, seeds)
    if exclude_seed is not None:
        seeds = seeds[seeds != exclude_seed]
    return np.unique(seeds, return_counts=True)


def racs_code_counts(
    k_r: int,
    poly: PolyEntry,
    L: int = settings.SPREADING_LENGTH,
    exact: bool = settings.EXACT_MSEQ_LENGTH,
    cap: int = settings.RACS_CODE_CAP,
    exclude_seed: Optional[int] = None,
) -> Tuple[List[SpreadingCode], np.ndarray]:
    """
    The RACS code set as distinct codes plus multiplicities; summing
    weight * code equals summing racs_code_set chipwise.
    """
    S = (1 << k_r) - 1
    if S > cap:
        raise ResourceLimitError(f"RACS code set of {S} codes exceeds cap {cap}")
    seeds, counts = racs_seed_counts(k_r, poly.degree, exclude_seed)
    codes = [code_from_seed_value(poly, int(seed), poly.degree, L, exact) for seed in seeds]
    return codes, counts.astype(np.float64)


def _stack(codes: Sequence[SpreadingCode]) -> np.ndarray:
    if not codes:
        raise ValidationError("at least one code is required")
    lengths = {c.length for c in codes}
    if len(lengths) != 1:
        raise ValidationError(f"codes have mismatched lengths {sorted(lengths)}")
    return np.stack([c.chips for c in codes]).astype(np.float64)


def _weights(weights: Optional[np.ndarray], count: int) -> np.ndarray:
    if weights is None:
        return np.ones(count)
    weights = np.asarray(weights, dtype=np.float64)
    if weights.shape != (count,) or np.any(weights < 0):
        raise ValidationError("weights must be one non-negative value per code")
    return weights


def racs_waveform(
    codes: Sequence[SpreadingCode],
    power: float,
    rng: np.random.Generator,
    normalize: RacsNormalization = RacsNormalization.NOMINAL,
    weights: Optional[np.ndarray] = None,
) -> np.ndarray:
    """
    sqrt(power / S) * x_e * sum(codes) with x_e a random +/-1 symbol.
    AVERAGE normalization rescales the summed chips to mean power `power`
    instead, absorbing the cross-code correlation. weights gives the
    multiplicity of each code, as returned by racs_code_counts.
    """
    stacked = _stack(codes)
    weights = _weights(weights, len(codes))
    if power < 0:
        raise ValidationError("jamming power must be non-negative")
    return _scaled_sum(weights @ stacked, weights.sum(), power, rng, normalize)


def _scaled_sum(
    total: np.ndarray, S: float, power: float, rng: np.random.Generator, normalize: RacsNormalization
) -> np.ndarray:
    x_e = rng.choice([-1.0, 1.0])
    if power == 0:
        return np.zeros(total.size, dtype=np.complex128)
    if normalize == RacsNormalization.AVERAGE:
        mean_power = float(np.mean(total ** 2))
        scale = np.sqrt(power / mean_power) if mean_power > 0 else 0.0
    else:
        scale = np.sqrt(power / S)
    return (scale * x_e * total).astype(np.complex128)


class RacsJammer:
    """
    A fixed RACS code set with its chipwise sum precomputed, for jamming
    many symbols against the same polynomial.
    """

    def __init__(self, codes: Sequence[SpreadingCode], weights: Optional[np.ndarray] = None):
        self.codes = list(codes)
        self.stacked = _stack(self.codes)
        self.weights = _weights(weights, len(self.codes))
        self.total = self.weights @ self.stacked

    @property
    def code_count(self) -> int:
        return int(round(self.weights.sum()))

    def waveform(
        self, power: float, rng: np.random.Generator, normalize: RacsNormalization = RacsNormalization.NOMINAL
    ) -> np.ndarray:
        if power < 0:
            raise ValidationError("jamming power must be non-negative")
        return _scaled_sum(self.total, self.weights.sum(), power, rng, normalize)

    def effective_interference(self, legit: SpreadingCode) -> float:
        if legit.length != self.total.size:
            raise ValidationError(f"code lengths differ: {legit.length} != {self.total.size}")
        return float(self.total @ legit.chips) / legit.length

    def power_factor(self, legit: SpreadingCode) -> float:
        return self.effective_interference(legit) ** 2


def effective_interference(
    codes: Sequence[SpreadingCode], legit: SpreadingCode, weights: Optional[np.ndarray] = None
) -> float:
    """phi = sum of code_correlation(code_i, legit)."""
    weights = _weights(weights, len(codes))
    return float(sum(w * code_correlation(c, legit) for w, c in zip(weights, codes)))


def interference_power_factor(
    codes: Sequence[SpreadingCode], legit: SpreadingCode, weights: Optional[np.ndarray] = None
) -> float:
    """
    Post-despread power of the coherent RACS sum relative to gamma_eb / S.
    The codes share one symbol x_e, so their correlations add in amplitude.
    """
    return effective_interference(codes, legit, weights) ** 2


def mai_phi_monte_carlo(
    codes: Sequence[SpreadingCode],
    legit: SpreadingCode,
    rng: np.random.Generator,
    trials: int = 200,
) -> float:
    """
    Estimate phi under asynchronous multiple-access interference.

    Codes identical to the legitimate one arrive aligned and contribute 1.
    Every other code arrives with a uniform continuous delay, a random
    carrier phase and independent data symbols on the two overlapping
    periods; its squared normalized correlation is averaged over trials.
    """
    stacked = _stack(list(codes) + [legit])
    others, reference = stacked[:-1], stacked[-1]
    matching = np.all(others == reference, axis=1)
    interferers = others[~matching]
    L = reference.size
    phi = float(np.count_nonzero(matching))
    if interferers.size == 0:
        return phi

    j = np.arange(L)
    total = np.zeros(interferers.shape[0])
    for _ in range(trials):
        shift = rng.integers(0, L, size=interferers.shape[0])
        frac = rng.random(interferers.shape[0])
        prev_bit = rng.choice([-1.0, 1.0], size=interferers.shape[0])
        cur_bit = rng.choice([-1.0, 1.0], size=interferers.shape[0])
        theta = rng.uniform(0.0, 2 * np.pi, size=interferers.shape[0])
        # chip stream: previous period then current period
        stream = np.concatenate([prev_bit[:, None] * interferers, cur_bit[:, None] * interferers], axis=1)
        idx = j[None, :] - shift[:, None] + L
        rows = np.arange(interferers.shape[0])[:, None]
        received = (1.0 - frac[:, None]) * stream[rows, idx] + frac[:, None] * stream[rows, idx - 1]
        rho = received @ reference / L * np.cos(theta)
        total += rho ** 2
    return phi + float(total.sum() / trials)


def broadband_waveform(num_chips: int, power: float, rng: np.random.Generator) -> np.ndarray:
    """
    Circularly symmetric complex Gaussian chips of variance `power`.
    """
    if num_chips < 1:
        raise ValidationError("num_chips must be positive")
    if power < 0:
        raise ValidationError("jamming power must be non-negative")
    scale = np.sqrt(power / 2.0)
    return scale * (rng.standard_normal(num_chips) + 1j * rng.standard_normal(num_chips))


class ReplayBuffer:
    """
    Chips the attacker captured, newest last. Holds only what the replay
    delay can reach.
    """

    def __init__(self, delay_symbols: int):
        if delay_symbols < 1:
            raise ValidationError("replay delay must be at least one symbol")
        self.delay_symbols = delay_symbols
        self._captured = deque(maxlen=delay_symbols)

    def capture(self, chips: np.ndarray) -> None:
        self._captured.append(np.asarray(chips).copy())

    @property
    def history(self) -> List[np.ndarray]:
        return list(self._captured)

    def __len__(self) -> int:
        return len(self._captured)


def replay_waveform(
    history: Sequence[np.ndarray],
    delay_symbols: int,
    random_symbol: float,
    power: float,
) -> np.ndarray:
    """
    sqrt(power) * random_symbol * chips captured delay_symbols earlier.
    Returns an empty array until enough symbols have been captured.
    """
    if delay_symbols < 1:
        raise ValidationError("same-symbol replay is not modeled; delay must be at least 1")
    if power < 0:
        raise ValidationError("jamming power must be non-negative")
    if len(history) < delay_symbols:
        return np.zeros(0, dtype=np.complex128)
    source = np.asarray(history[-delay_symbols])
    return (np.sqrt(power) * random_symbol * source).astype(np.complex128)


def peak_power(waveform: np.ndarray) -> dict:
    """
    Peak and average chip power plus their ratio.
    """
    magnitudes = np.abs(np.asarray(waveform)) ** 2
    if magnitudes.size == 0:
        return {"peak": 0.0, "average": 0.0, "papr": 0.0}
    average = float(magnitudes.mean())
    peak = float(magnitudes.max())
    return {"peak": peak, "average": average, "papr": peak / average if average > 0 else 0.0}
