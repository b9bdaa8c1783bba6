"""
Guard-band quantization of channel magnitudes and dropped-index alignment.

Thresholds are mean +/- alpha * sigma^2 per block (alpha * sigma when the
config says so). Estimates inside the guard band are dropped, so each side
publishes its kept indices and both keep only the common ones.
"""
import logging
from typing import Optional, Tuple

import numpy as np

from core.exceptions import ValidationError
from schemas.extractor import QuantizedBlock, QuantizerConfig

logger = logging.getLogger(__name__)


def thresholds(
    estimates: np.ndarray,
    cfg: QuantizerConfig,
    mean: Optional[float] = None,
    variance: Optional[float] = None,
) -> Tuple[float, float]:
    mu = float(np.mean(estimates)) if mean is None else mean
    var = float(np.var(estimates)) if variance is None else variance
    spread = np.sqrt(var) if cfg.use_std else var
    return mu + cfg.alpha_tune * spread, mu - cfg.alpha_tune * spread


def quantize(
    estimates: np.ndarray,
    cfg: QuantizerConfig,
    mean: Optional[float] = None,
    variance: Optional[float] = None,
) -> QuantizedBlock:
    """
    Quantize a real magnitude vector block by block.

    mean/variance override the per-block sample statistics when given.
    """
    estimates = np.asarray(estimates, dtype=float).ravel()
    if estimates.size == 0:
        raise ValidationError("cannot quantize an empty estimate vector")
    if not np.all(np.isfinite(estimates)):
        raise ValidationError("estimates must be finite")

    bits, kept = [], []
    for start in range(0, estimates.size, cfg.block_len):
        block = estimates[start:start + cfg.block_len]
        upper, lower = thresholds(block, cfg, mean, variance)
        high = block > upper
        low = block < lower
        keep = np.flatnonzero(high | low)
        kept.append(keep + start)
        bits.append(high[keep].astype(np.uint8))

    return QuantizedBlock(bits=np.concatenate(bits), kept_indices=np.concatenate(kept))


def common_indices(a: QuantizedBlock, b: QuantizedBlock) -> np.ndarray:
    return np.intersect1d(a.kept_indices, b.kept_indices, assume_unique=True)


def restrict(block: QuantizedBlock, indices: np.ndarray) -> np.ndarray:
    positions = np.searchsorted(block.kept_indices, indices)
    return block.bits[positions]


def align(a: QuantizedBlock, b: QuantizedBlock) -> Tuple[np.ndarray, np.ndarray]:
    """
    Both bit strings restricted to the shared kept indices; empty when disjoint.
    """
    shared = common_indices(a, b)
    return restrict(a, shared), restrict(b, shared)
