"""
One end-to-end trial: probe, extract a shared key, seed both generators,
derive spreading codes, transmit a jammed frame and despread it at Bob.

Every random draw comes from TrialStreams(master_seed, trial) under a purpose
name that includes k_t, so trials reproduce independently of run order.
"""
import logging
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np

from adversary.jammer import (
    RacsJammer,
    ReplayBuffer,
    broadband_waveform,
    peak_power,
    racs_code_counts,
    replay_waveform,
)
from analytics.formulas import gammas_from_budget, reference_geometry, sinr_broadband, sinr_racs
from channel.sim import complex_gaussian, probe_pair, sample_channel_matrix
from core.exceptions import ReseedRefused, ValidationError
from core.rng import TrialStreams
from dsss.bank import default_bank, load_bank
from dsss.spreading import despread, spread
from dsss.ssg import ssg_code
from extractor.pipeline import extract_shared_key
from rsg.fortuna import SeedGenerator
from schemas.adversary import CodeRefresh, JammerStrategy
from schemas.channel import TapProfile
from schemas.dsss import PolyEntry, PrimitivePolyBank, SpreadingCode
from schemas.experiment import ExperimentConfig, KeyFailurePolicy, TrialRecord
from schemas.extractor import ExtractionResult
from schemas.response import ErrorCodes

logger = logging.getLogger(__name__)


@lru_cache(maxsize=8)
def _bank_from_path(path: str) -> PrimitivePolyBank:
    return load_bank(path)


def experiment_bank(config: ExperimentConfig) -> PrimitivePolyBank:
    if config.bank_path:
        return _bank_from_path(config.bank_path)
    return default_bank(config.bank_degrees)


def experiment_gammas(config: ExperimentConfig) -> Tuple[float, float]:
    """(gamma_ab, gamma_eb) for the campaign."""
    if config.jammer.strategy == JammerStrategy.NONE:
        gamma_eb = 0.0
    else:
        gamma_eb = config.jammer.gamma_eb
    if config.gamma_ab is not None:
        return config.gamma_ab, gamma_eb
    gamma_ab, budget_eb = gammas_from_budget(config.link_budget or reference_geometry())
    return gamma_ab, 0.0 if config.jammer.strategy == JammerStrategy.NONE else budget_eb


@lru_cache(maxsize=128)
def _racs_jammer(k_r: int, poly: PolyEntry, L: int, exact: bool, exclude_seed: Optional[int]) -> Optional[RacsJammer]:
    """None when excluding the legitimate seed leaves nothing to jam with."""
    codes, weights = racs_code_counts(k_r, poly, L, exact, exclude_seed=exclude_seed)
    if not codes:
        return None
    return RacsJammer(codes, weights)


def agree_key(config: ExperimentConfig, k_t: int, streams: TrialStreams) -> Tuple[ExtractionResult, int]:
    """
    Probe and extract a k_t-bit key, retrying on fresh probes when the
    policy allows. Returns the last extraction and the retries used.
    """
    attempts = 1 + (config.max_key_retries if config.key_failure_policy == KeyFailurePolicy.RETRY else 0)
    profile = TapProfile.uniform(config.channel.num_taps)
    result = ExtractionResult(failure=ErrorCodes.DECODE_FAILURE)
    for attempt in range(attempts):
        rng = streams[f"k{k_t}:probe:{attempt}"]
        true_channel = sample_channel_matrix(profile, config.channel.num_subcarriers, config.channel.num_slots, rng)
        H_ab, H_ba, _ = probe_pair(
            true_channel, config.channel.probe_error_variance, config.channel.eve_offset_variance, rng
        )
        try:
            result = extract_shared_key(
                H_ab.values, H_ba.values, config.quantizer, config.bch, k_t, streams[f"k{k_t}:extract:{attempt}"]
            )
        except ValidationError as e:
            logger.warning(f"Key extraction rejected: {e.message}")
            result = ExtractionResult(failure=ErrorCodes.VALIDATION_ERROR)
        if result.agreed:
            return result, attempt
    return result, attempts - 1


def seed_generator(config: ExperimentConfig, k_t: int, key_bits: np.ndarray) -> SeedGenerator:
    """
    A fresh generator holding the agreed key. With single_source_feed only
    pool 0 receives it; otherwise every pool does.
    """
    min_entropy = k_t if config.min_pool_entropy is None else config.min_pool_entropy
    generator = SeedGenerator(num_pools=config.num_pools, min_pool_entropy=min_entropy)
    sources = [0] if config.single_source_feed else range(config.num_pools)
    for source in sources:
        generator.feed_key(key_bits, source_id=source, entropy_bits=k_t)
    return generator


def next_code(generator: SeedGenerator, config: ExperimentConfig, k_t: int, bank: PrimitivePolyBank) -> SpreadingCode:
    """The next spreading code; code.seed is the LFSR seed the key produced."""
    seeds = generator.next_seed_pair(config.seed_length)
    return ssg_code(seeds.R_s, seeds.R_p, bank, config.L, config.exact_length, seed_bits=k_t)


def run_pipeline_trial(config: ExperimentConfig, k_t: int, trial_index: int) -> TrialRecord:
    streams = TrialStreams(config.master_seed, trial_index)
    extraction, retries = agree_key(config, k_t, streams)
    if not extraction.agreed:
        return TrialRecord(
            trial=trial_index, k_t=k_t, key_agreed=False, key_retries=retries, failure=extraction.failure
        )

    bank = experiment_bank(config)
    gamma_ab, gamma_eb = experiment_gammas(config)
    jammer = config.jammer
    alice = seed_generator(config, k_t, extraction.key_alice.bits)
    bob = seed_generator(config, k_t, extraction.key_bob.bits)

    h_ab, h_eb = complex_gaussian(1.0, 2, streams[f"k{k_t}:fading"])
    a = np.sqrt(gamma_ab) * h_ab
    data_rng = streams[f"k{k_t}:data"]
    noise_rng = streams[f"k{k_t}:noise"]
    jam_rng = streams[f"k{k_t}:jammer"]
    symbols = data_rng.choice([-1.0, 1.0], size=config.symbols_per_frame)
    k_r = jammer.k_r or k_t
    buffer = ReplayBuffer(jammer.delay_symbols) if jammer.strategy == JammerStrategy.REPLAY else None

    residual_power = 0.0
    errors = 0
    codes_match = True
    phis = []
    paprs = []
    racs = None
    code_a = code_b = None
    try:
        for i, s in enumerate(symbols):
            if code_a is None or config.refresh == CodeRefresh.PER_SYMBOL:
                code_a = next_code(alice, config, k_t, bank)
                code_b = next_code(bob, config, k_t, bank)
                codes_match = codes_match and np.array_equal(code_a.chips, code_b.chips)
                if jammer.strategy == JammerStrategy.RACS:
                    exclude = None if jammer.include_legit else code_a.seed
                    racs = _racs_jammer(k_r, code_a.poly, config.L, config.exact_length, exclude)
                    if racs is not None:
                        paprs.append(peak_power(racs.total)["papr"])
            L = code_a.length
            transmitted = spread(np.array([s]), code_a)

            if gamma_eb == 0 or jammer.strategy == JammerStrategy.NONE:
                jam = np.zeros(L, dtype=np.complex128)
            elif jammer.strategy == JammerStrategy.RACS and racs is None:
                jam = np.zeros(L, dtype=np.complex128)
                phis.append(0.0)
            elif jammer.strategy == JammerStrategy.BROADBAND:
                jam = broadband_waveform(L, gamma_eb, jam_rng)
            elif jammer.strategy == JammerStrategy.RACS:
                jam = racs.waveform(gamma_eb, jam_rng, jammer.normalize)
                phis.append(racs.power_factor(code_a))
            else:
                jam = replay_waveform(buffer.history, jammer.delay_symbols, jam_rng.choice([-1.0, 1.0]), gamma_eb)
                if jam.size == 0:
                    jam = np.zeros(L, dtype=np.complex128)

            received = a * transmitted + h_eb * jam + complex_gaussian(1.0, L, noise_rng)
            statistic = despread(received, code_b)[0]
            residual_power += abs(statistic - a * s) ** 2
            errors += int(np.sign((np.conj(a) * statistic).real) != s)
            if buffer is not None:
                buffer.capture(transmitted)
    except ReseedRefused as e:
        logger.warning(f"Trial {trial_index} could not seed its generators: {e.message}")
        return TrialRecord(
            trial=trial_index, k_t=k_t, key_agreed=True, key_retries=retries, failure=e.error_code
        )

    L = code_a.length
    sinr = abs(a) ** 2 / (residual_power / symbols.size)
    g_ab, g_eb = abs(h_ab) ** 2, abs(h_eb) ** 2
    phi = float(np.mean(phis)) if phis else None
    if jammer.strategy == JammerStrategy.RACS and gamma_eb > 0 and racs is None:
        sinr_analytic = float(sinr_broadband(gamma_ab, 0.0, g_ab, g_eb, L))
    elif jammer.strategy == JammerStrategy.RACS and gamma_eb > 0:
        sinr_analytic = float(sinr_racs(gamma_ab, gamma_eb, g_ab, g_eb, L, phi, racs.code_count))
    else:
        sinr_analytic = float(sinr_broadband(gamma_ab, gamma_eb, g_ab, g_eb, L))

    return TrialRecord(
        trial=trial_index,
        k_t=k_t,
        key_agreed=True,
        key_retries=retries,
        codes_match=codes_match,
        code_length=L,
        sinr=float(sinr),
        sinr_analytic=sinr_analytic,
        phi=phi,
        jam_papr=max(paprs) if paprs else None,
        symbol_errors=errors,
        symbols=int(symbols.size),
        success=bool(sinr > config.gamma_th),
    )
