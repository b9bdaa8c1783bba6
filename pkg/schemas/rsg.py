from typing import List

import numpy as np
from pydantic import BaseModel, Field, ConfigDict, model_validator

POOL_DIGEST_BYTES = 32


class GeneratorState(BaseModel):
    """Entropy pools, reseed counter and internal key of one seed generator"""
    pools: List[bytes] = Field(..., description="Pool digests P_0..P_U, 32 bytes each")
    C_p: int = Field(0, ge=0, description="Reseed counter")
    R: bytes = Field(bytes(POOL_DIGEST_BYTES), description="Internal AES-256 key")
    pool_fill_bits: List[int] = Field(..., description="Declared entropy accumulated per pool")

    @model_validator(mode="after")
    def check_pools(self):
        if not self.pools:
            raise ValueError("at least one pool is required")
        if any(len(p) != POOL_DIGEST_BYTES for p in self.pools):
            raise ValueError("each pool digest must be exactly 32 bytes")
        if len(self.pool_fill_bits) != len(self.pools):
            raise ValueError("pool_fill_bits must have one entry per pool")
        if len(self.R) != POOL_DIGEST_BYTES:
            raise ValueError("R must be 32 bytes")
        return self

    @property
    def num_pools(self) -> int:
        return len(self.pools)

    @property
    def seeded(self) -> bool:
        return self.C_p > 0


class SeedOutput(BaseModel):
    """Random seed R_s and 128-bit polynomial selector R_p"""
    R_s: np.ndarray
    R_p: np.ndarray

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def check_lengths(self):
        if self.R_p.size != 128:
            raise ValueError("R_p must be exactly 128 bits")
        return self
