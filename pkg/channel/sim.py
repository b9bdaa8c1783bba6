"""
Frequency-selective Rayleigh channel and reciprocal probing.

Taps are drawn circular-complex-Gaussian with the profile's powers and mapped
to M subcarriers with an M-point DFT. Probing slots are independent draws;
the probing rate is assumed to be 1/T_c.
"""
import logging
import math
from typing import Tuple

import numpy as np

from core.exceptions import DomainError, ValidationError
from schemas.channel import ChannelObservation, ObservationRole, ProbingSchedule, TapProfile

logger = logging.getLogger(__name__)


def complex_gaussian(variance: float, size, rng: np.random.Generator) -> np.ndarray:
    """
    Circular complex Gaussian samples with E|x|^2 = variance.
    """
    scale = math.sqrt(variance / 2.0)
    return scale * (rng.standard_normal(size) + 1j * rng.standard_normal(size))


def sample_channel(profile: TapProfile, M: int, rng: np.random.Generator) -> np.ndarray:
    if M < profile.num_taps:
        raise ValidationError(f"M={M} subcarriers is fewer than {profile.num_taps} taps")
    powers = np.asarray(profile.tap_powers, dtype=float)
    taps = np.sqrt(powers / 2.0) * (
        rng.standard_normal(profile.num_taps) + 1j * rng.standard_normal(profile.num_taps)
    )
    return np.fft.fft(taps, n=M)


def sample_channel_matrix(profile: TapProfile, M: int, N: int, rng: np.random.Generator) -> ChannelObservation:
    """
    N independent probing slots of the true channel, as Alice observes it.
    """
    if N < 1:
        raise ValidationError("at least one probing slot is required")
    rows = np.vstack([sample_channel(profile, M, rng) for _ in range(N)])
    return ChannelObservation(values=rows, role=ObservationRole.ALICE)


def probe_pair(
    true_channel: ChannelObservation,
    probe_error_variance: float,
    eve_offset_variance: float,
    rng: np.random.Generator,
) -> Tuple[ChannelObservation, ChannelObservation, ChannelObservation]:
    """
    Returns (H_ab, H_ba, H_ea). Bob's and Eve's errors are independent draws.
    """
    if probe_error_variance < 0 or eve_offset_variance < 0:
        raise ValidationError("probe variances must be nonnegative")
    if eve_offset_variance < probe_error_variance:
        raise ValidationError("eve_offset_variance must not be smaller than probe_error_variance")

    H_ab = true_channel.values
    delta_b = complex_gaussian(probe_error_variance, H_ab.shape, rng)
    delta_e = complex_gaussian(eve_offset_variance, H_ab.shape, rng)
    return (
        ChannelObservation(values=H_ab.copy(), role=ObservationRole.ALICE),
        ChannelObservation(values=H_ab + delta_b, role=ObservationRole.BOB),
        ChannelObservation(values=H_ab + delta_e, role=ObservationRole.EVE),
    )


def coherence_time(f_d: float) -> float:
    if f_d <= 0:
        raise DomainError(f"Doppler frequency must be positive, got {f_d}")
    return 9.0 / (16.0 * math.pi * f_d)


def schedule_valid(s: ProbingSchedule) -> bool:
    budget = s.T_P1 + s.T_P2 + s.T_s
    if budget == 0:
        return True
    return budget <= coherence_time(s.f_d)


def probing_rate(f_d: float) -> float:
    """
    Probing slots per second when one exchange is made per coherence time.
    """
    return 1.0 / coherence_time(f_d)
