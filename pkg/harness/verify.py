"""
Acceptance suites runnable from the CLI. Each returns a report dict with a
`passed` flag and per-check detail; `full=True` runs the acceptance-scale
trial counts.
"""
import logging
from itertools import combinations
from typing import Callable, Dict, List, Optional

import numpy as np

from analytics.formulas import p_s_closed_form, p_s_monte_carlo
from analytics.stats import binomial_band, monobit_test, runs_test
from core import bits as bitops
from core.exceptions import ConfigurationError, ReconciliationError
from core.rng import stream
from dsss.bank import default_bank, load_bank
from dsss.lfsr import lfsr_generate, measure_period
from dsss.spreading import periodic_autocorrelation
from extractor.sketch import sketch_generate, sketch_recover
from rsg.fortuna import SeedGenerator, Transcript, new_state, pool_feed, reseed
from schemas.analytics import SuccessQuery
from schemas.coding import BchParams

logger = logging.getLogger(__name__)

SMALL_CODE = BchParams(n=15, k=7, t=2)
LARGE_CODE = BchParams(n=255, k=131, t=18)


def _report(suite: str, checks: List[Dict]) -> Dict:
    passed = all(c["passed"] for c in checks)
    level = logging.INFO if passed else logging.WARNING
    logger.log(level, f"Suite {suite}: {sum(c['passed'] for c in checks)}/{len(checks)} checks passed")
    return {"suite": suite, "passed": passed, "checks": checks}


def verify_closed_form(master_seed: int = 0, full: bool = False) -> Dict:
    trials, sigmas = (1_000_000, 3.0) if full else (20_000, 4.0)
    checks = []
    for k_r in range(1, 9):
        for L in (64, 1024):
            for gamma_ab, gamma_eb in ((10.0, 10.0), (10.0, 1.0)):
                q = SuccessQuery(k_r=k_r, gamma_th=1.0, L=L)
                rng = stream(master_seed, f"closed-form:{k_r}:{L}:{gamma_eb}")
                estimate, _ = p_s_monte_carlo(q, gamma_ab, gamma_eb, trials, rng)
                expected = p_s_closed_form(q, gamma_ab, gamma_eb)
                low, high = binomial_band(expected, trials, sigmas)
                checks.append({
                    "k_r": k_r, "L": L, "gamma_ab": gamma_ab, "gamma_eb": gamma_eb,
                    "estimate": estimate, "closed_form": expected,
                    "passed": low <= estimate <= high,
                })
    return _report("theorem1", checks)


def verify_msequence(bank_path: Optional[str] = None, max_degree: int = 16) -> Dict:
    bank = load_bank(bank_path) if bank_path else default_bank()
    checks = []
    for entry in bank.entries:
        if entry.degree > max_degree:
            continue
        period = measure_period(entry)
        code = lfsr_generate(entry, bitops.from_int(1, entry.degree), entry.period)
        ones = int(np.count_nonzero(code.chips < 0))
        autocorrelation = periodic_autocorrelation(code)
        off_peak = bool(np.all(np.rint(autocorrelation[1:] * entry.period) == -1))
        checks.append({
            "poly": entry.label,
            "period": period,
            "ones": ones,
            "passed": period == entry.period and ones == 1 << (entry.degree - 1) and off_peak,
        })
    if not checks:
        raise ConfigurationError(f"no bank entries of degree <= {max_degree}")
    return _report("msequence", checks)


def _recovers(bits: np.ndarray, noisy: np.ndarray, p: BchParams, rng) -> bool:
    msg, _ = sketch_generate(bits, p, rng)
    try:
        return np.array_equal(sketch_recover(noisy, msg).bits, bits)
    except ReconciliationError:
        return False


def verify_sketch(master_seed: int = 0, full: bool = False) -> Dict:
    rng = stream(master_seed, "verify:sketch")
    checks = []

    bits = bitops.random_bits(SMALL_CODE.n, rng)
    within, beyond_ok = 0, 0
    patterns_within = [c for w in range(3) for c in combinations(range(SMALL_CODE.n), w)]
    for positions in patterns_within:
        noisy = bits.copy()
        noisy[list(positions)] ^= 1
        within += _recovers(bits, noisy, SMALL_CODE, rng)
    patterns_beyond = list(combinations(range(SMALL_CODE.n), 3))
    for positions in patterns_beyond:
        noisy = bits.copy()
        noisy[list(positions)] ^= 1
        msg, _ = sketch_generate(bits, SMALL_CODE, rng)
        try:
            sketch_recover(noisy, msg)
        except ReconciliationError:
            beyond_ok += 1
    checks.append({"code": "15/7/2", "within_t": f"{within}/{len(patterns_within)}",
                   "passed": within == len(patterns_within)})
    checks.append({"code": "15/7/2", "beyond_t_rejected": f"{beyond_ok}/{len(patterns_beyond)}",
                   "passed": beyond_ok == len(patterns_beyond)})

    trials = 10_000 if full else 200
    recovered = 0
    for _ in range(trials):
        bits = bitops.random_bits(LARGE_CODE.n, rng)
        noisy = bits.copy()
        weight = int(rng.integers(0, LARGE_CODE.t + 1))
        noisy[rng.choice(LARGE_CODE.n, size=weight, replace=False)] ^= 1
        recovered += _recovers(bits, noisy, LARGE_CODE, rng)
    checks.append({"code": "255/131/18", "recovered": f"{recovered}/{trials}", "passed": recovered == trials})
    return _report("sketch", checks)


def verify_fortuna(master_seed: int = 0, num_pools: int = 12) -> Dict:
    checks = []
    transcript = Transcript()
    state = new_state(num_pools)
    for r in range(1024):
        for source in range(num_pools):
            state = pool_feed(state, source, r.to_bytes(4, "big"), 128)
        state = reseed(state, min_pool_entropy=128, transcript=transcript)
    schedule_ok = True
    for line in transcript.lines:
        if not line.startswith("RESEED"):
            continue
        _, counter, pools = line.split()
        counter = int(counter)
        included = {int(i) for i in pools.split(",")}
        schedule_ok &= included == {i for i in range(num_pools) if counter % (1 << i) == 0}
    checks.append({"check": "reseed schedule", "reseeds": 1024, "passed": schedule_ok})

    rng = stream(master_seed, "verify:fortuna")
    generator = SeedGenerator(num_pools=num_pools, min_pool_entropy=64)
    chunks = []
    while sum(c.size for c in chunks) < 100_000:
        for source in range(1, num_pools):
            generator.feed(source, b"known-constant", 0)
        generator.feed(0, rng.bytes(8), 64)
        chunks.append(generator.next_seed_pair(1024).R_s)
    output = np.concatenate(chunks)[:100_000]
    monobit, runs = monobit_test(output), runs_test(output)
    checks.append({"check": "single-source output", "monobit_p": monobit, "runs_p": runs,
                   "passed": monobit > 0.01 and runs > 0.01})
    return _report("fortuna", checks)


SUITES: Dict[str, Callable[..., Dict]] = {
    "theorem1": verify_closed_form,
    "closed-form": verify_closed_form,
    "msequence": verify_msequence,
    "sketch": verify_sketch,
    "fortuna": verify_fortuna,
}
