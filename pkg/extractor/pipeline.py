"""
End-to-end shared randomness extraction between Alice and Bob.

quantize -> align (public index exchange) -> per-block secure sketch ->
privacy amplification. Blocks shorter than n are zero-padded on the right;
pad positions never count towards the entropy estimate.
"""
import logging
from typing import List, Optional

import numpy as np

from core import bits as bitops
from core.exceptions import ReconciliationError, ValidationError
from extractor.amplify import privacy_amplify
from extractor.quantizer import common_indices, quantize, restrict
from extractor.sketch import sketch_generate, sketch_recover
from schemas.coding import BchParams
from schemas.extractor import ExtractionResult, QuantizerConfig, SecureSketchMsg
from schemas.response import ErrorCodes

logger = logging.getLogger(__name__)


def segment(bits: np.ndarray, n: int) -> List[np.ndarray]:
    """
    Split into n-bit blocks, zero-padding the last one.
    """
    blocks = []
    for start in range(0, bits.size, n):
        block = bits[start:start + n]
        if block.size < n:
            block = np.concatenate([block, np.zeros(n - block.size, dtype=np.uint8)])
        blocks.append(block)
    return blocks


def leaked_entropy(num_bits: int, p: BchParams) -> int:
    """
    Entropy left after publishing one sketch per block (n - k bits each).
    """
    num_blocks = -(-num_bits // p.n)
    return max(0, num_bits - num_blocks * p.redundancy)


def extract_shared_key(
    H_ab_row: np.ndarray,
    H_ba_row: np.ndarray,
    cfg: QuantizerConfig,
    p: BchParams,
    l: int,
    rng: np.random.Generator,
    raise_on_failure: bool = False,
) -> ExtractionResult:
    """
    Run both sides of the fuzzy extractor on one pair of channel estimates.

    The rows may be complex estimates or magnitudes of any shape; they are
    flattened. With raise_on_failure=False a reconciliation failure leaves
    key_bob empty and records the error code in result.failure.
    """
    magnitudes_a = np.abs(np.asarray(H_ab_row)).ravel()
    magnitudes_b = np.abs(np.asarray(H_ba_row)).ravel()
    if magnitudes_a.size != magnitudes_b.size:
        raise ValidationError("Alice and Bob rows must have equal length")

    block_a = quantize(magnitudes_a, cfg)
    block_b = quantize(magnitudes_b, cfg)
    kept = common_indices(block_a, block_b)
    bits_a, bits_b = restrict(block_a, kept), restrict(block_b, kept)

    if bits_a.size == 0:
        if raise_on_failure:
            raise ReconciliationError("no common kept indices", error_code=ErrorCodes.EMPTY_INTERSECTION)
        return ExtractionResult(failure=ErrorCodes.EMPTY_INTERSECTION, kept_indices=kept)
    if l > bits_a.size:
        raise ValidationError(f"requested key length {l} exceeds {bits_a.size} aligned bits")

    leakage: List[SecureSketchMsg] = []
    recovered: List[np.ndarray] = []
    failure: Optional[str] = None
    for chunk_a, chunk_b in zip(segment(bits_a, p.n), segment(bits_b, p.n)):
        msg, _ = sketch_generate(chunk_a, p, rng)
        leakage.append(msg)
        if failure is not None:
            continue
        try:
            recovered.append(sketch_recover(chunk_b, msg).bits)
        except ReconciliationError as e:
            failure = e.error_code

    entropy = leaked_entropy(bits_a.size, p)
    hash_choice_seed = bitops.random_bits(bits_a.size + l - 1, rng)
    key_alice = privacy_amplify(bits_a, l, hash_choice_seed, source_entropy=entropy)

    key_bob = None
    if failure is None:
        reconciled_b = np.concatenate(recovered)[:bits_a.size]
        key_bob = privacy_amplify(reconciled_b, l, hash_choice_seed, source_entropy=entropy)
    else:
        logger.warning(f"Reconciliation failed ({failure}) with {bitops.hamming(bits_a, bits_b)} mismatches")
        if raise_on_failure:
            raise ReconciliationError("secure sketch recovery failed", error_code=failure)

    return ExtractionResult(
        key_alice=key_alice,
        key_bob=key_bob,
        leakage=leakage,
        kept_indices=kept,
        hash_choice_seed=hash_choice_seed,
        failure=failure,
        mismatches=bitops.hamming(bits_a, bits_b),
    )


def attacker_recover(H_ea_row: np.ndarray, result: ExtractionResult, cfg: QuantizerConfig) -> int:
    """
    Eve's attempt: quantize her own estimates at the published indices and run
    sketch recovery on every public block. Returns the number of blocks she
    recovered.
    """
    if result.kept_indices is None or not result.leakage:
        return 0
    magnitudes = np.abs(np.asarray(H_ea_row)).ravel()
    guess = (magnitudes > np.mean(magnitudes)).astype(np.uint8)[result.kept_indices]
    n = result.leakage[0].params.n
    recovered = 0
    for chunk, msg in zip(segment(guess, n), result.leakage):
        try:
            sketch_recover(chunk, msg)
            recovered += 1
        except ReconciliationError:
            pass
    return recovered


def block_correlation(a: np.ndarray, b: np.ndarray) -> float:
    """
    |2 * agreement_fraction - 1| for two equal-length bit blocks.
    """
    agreement = 1.0 - bitops.hamming(a, b) / a.size
    return abs(2.0 * agreement - 1.0)


def subcarrier_decorrelate(key_blocks: List[np.ndarray], threshold: float) -> List[np.ndarray]:
    """
    Each block is compared with its neighbour on the preceding subcarrier
    group; the later block of a pair correlated above `threshold` is dropped,
    even when that neighbour was itself dropped.
    """
    if not 0.0 <= threshold <= 1.0:
        raise ValidationError("threshold must lie in [0, 1]")
    blocks = [bitops.as_bits(b) for b in key_blocks]
    if len({b.size for b in blocks}) > 1:
        raise ValidationError("key blocks must have equal length")

    kept = blocks[:1]
    for previous, block in zip(blocks, blocks[1:]):
        if block_correlation(previous, block) <= threshold:
            kept.append(block)
    if len(kept) < len(blocks):
        logger.debug(f"Decorrelation dropped {len(blocks) - len(kept)} of {len(blocks)} blocks")
    return kept
