"""
Privacy amplification with a binary Toeplitz matrix.

The l x n matrix is fixed by l + n - 1 public seed bits; shorter seeds are
stretched with SHA-256 in counter mode.
"""
import hashlib
from typing import Optional

import numpy as np
from scipy.linalg import toeplitz

from core import bits as bitops
from core.exceptions import ValidationError
from schemas.extractor import SharedKey


def expand_seed(seed: np.ndarray, needed: int) -> np.ndarray:
    seed = bitops.as_bits(seed)
    if seed.size == 0:
        raise ValidationError("hash choice seed must not be empty")
    if seed.size >= needed:
        return seed[:needed]
    material = bitops.to_bytes(seed) + seed.size.to_bytes(4, "big")
    stream = bytearray()
    counter = 0
    while len(stream) * 8 < needed:
        stream += hashlib.sha256(material + counter.to_bytes(4, "big")).digest()
        counter += 1
    return bitops.from_bytes(bytes(stream), needed)


def toeplitz_matrix(out_len: int, in_len: int, hash_choice_seed: np.ndarray) -> np.ndarray:
    s = expand_seed(hash_choice_seed, out_len + in_len - 1)
    first_col = s[:out_len]
    first_row = np.concatenate([s[:1], s[out_len:]])
    return toeplitz(first_col, first_row).astype(np.int64)


def privacy_amplify(
    bits: np.ndarray,
    out_len: int,
    hash_choice_seed: np.ndarray,
    source_entropy: Optional[int] = None,
) -> SharedKey:
    bits = bitops.as_bits(bits)
    if out_len < 1:
        raise ValidationError("output length must be positive")
    if out_len > bits.size:
        raise ValidationError(f"output length {out_len} exceeds input length {bits.size}")

    T = toeplitz_matrix(out_len, bits.size, hash_choice_seed)
    key = (T @ bits.astype(np.int64) % 2).astype(np.uint8)
    entropy = bits.size if source_entropy is None else source_entropy
    return SharedKey(bits=key, entropy_estimate=max(0, min(out_len, entropy)))
