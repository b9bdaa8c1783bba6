from typing import Optional

import numpy as np
from pydantic import BaseModel, Field, ConfigDict, model_validator


class BchParams(BaseModel):
    """Binary BCH code (n, k) correcting up to t errors"""
    n: int = Field(..., description="Codeword length, 2^m - 1")
    k: int = Field(..., ge=1, description="Message length")
    t: int = Field(..., ge=1, description="Error-correction capability")

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_shape(self):
        m = (self.n + 1).bit_length() - 1
        if (1 << m) - 1 != self.n or not 3 <= m <= 16:
            raise ValueError(f"n={self.n} is not 2^m - 1 for m in 3..16")
        if self.k >= self.n:
            raise ValueError("k must be smaller than n")
        return self

    @property
    def m(self) -> int:
        return (self.n + 1).bit_length() - 1

    @property
    def redundancy(self) -> int:
        return self.n - self.k


class DecodeResult(BaseModel):
    """Outcome of bounded-distance decoding; a failure is a value, not an exception"""
    success: bool
    codeword: Optional[np.ndarray] = None
    corrections: int = 0

    model_config = ConfigDict(arbitrary_types_allowed=True)
