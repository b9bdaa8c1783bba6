from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field, ConfigDict, model_validator

from core.config import settings
from schemas.coding import BchParams


class QuantizerConfig(BaseModel):
    """Adaptive guard-band quantizer settings"""
    alpha_tune: float = Field(default=settings.QUANT_ALPHA, ge=0, description="Guard band width factor")
    block_len: int = Field(default=64, ge=1, description="Estimates per quantized block")
    use_std: bool = Field(default=settings.QUANT_USE_STD, description="Scale the guard band by sigma instead of sigma^2")


class QuantizedBlock(BaseModel):
    bits: np.ndarray
    kept_indices: np.ndarray

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def check_lengths(self):
        self.bits = np.asarray(self.bits, dtype=np.uint8)
        self.kept_indices = np.asarray(self.kept_indices, dtype=np.int64)
        if self.bits.size != self.kept_indices.size:
            raise ValueError("bits and kept_indices must have equal length")
        if np.any(np.diff(self.kept_indices) <= 0):
            raise ValueError("kept_indices must be strictly increasing")
        return self


class SecureSketchMsg(BaseModel):
    """Public helper string: Q(H_ab) xor C plus SHA-256 of Q(H_ab)"""
    sketch: np.ndarray
    verify_hash: bytes
    params: BchParams

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def check_lengths(self):
        self.sketch = np.asarray(self.sketch, dtype=np.uint8)
        if self.sketch.size != self.params.n:
            raise ValueError(f"sketch length {self.sketch.size} != n={self.params.n}")
        if len(self.verify_hash) != 32:
            raise ValueError("verify_hash must be a 32-byte SHA-256 digest")
        return self


class SketchRecovery(BaseModel):
    bits: np.ndarray
    corrections: int

    model_config = ConfigDict(arbitrary_types_allowed=True)


class SharedKey(BaseModel):
    bits: np.ndarray
    entropy_estimate: int = Field(..., ge=0, description="Estimated min-entropy in bits after amplification")

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @property
    def length(self) -> int:
        return int(self.bits.size)


class ExtractionResult(BaseModel):
    """
    Both sides of one extraction run. key_bob is None when reconciliation
    failed; leakage is everything an eavesdropper observes.
    """
    key_alice: Optional[SharedKey] = None
    key_bob: Optional[SharedKey] = None
    leakage: List[SecureSketchMsg] = []
    kept_indices: Optional[np.ndarray] = None
    hash_choice_seed: Optional[np.ndarray] = None
    failure: Optional[str] = None
    mismatches: int = 0

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @property
    def agreed(self) -> bool:
        return (
            self.key_alice is not None
            and self.key_bob is not None
            and np.array_equal(self.key_alice.bits, self.key_bob.bits)
        )
