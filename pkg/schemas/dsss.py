from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field, ConfigDict, model_validator


class PolyEntry(BaseModel):
    """
    Primitive polynomial x^n + sum(c_i x^i); bit i of tap_mask is c_i.
    """
    degree: int = Field(..., ge=2, le=32)
    tap_mask: int = Field(..., ge=1)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_mask(self):
        if self.tap_mask >= (1 << self.degree):
            raise ValueError(f"tap mask {self.tap_mask:#x} does not fit degree {self.degree}")
        if not self.tap_mask & 1:
            raise ValueError("primitive polynomials have a nonzero constant term")
        return self

    @property
    def poly_int(self) -> int:
        return (1 << self.degree) | self.tap_mask

    @property
    def period(self) -> int:
        return (1 << self.degree) - 1

    @property
    def label(self) -> str:
        return f"{self.degree}:{self.tap_mask:x}"


class PrimitivePolyBank(BaseModel):
    entries: List[PolyEntry] = []

    model_config = ConfigDict(frozen=True)

    def __len__(self) -> int:
        return len(self.entries)

    def of_degree(self, degree: int) -> "PrimitivePolyBank":
        return PrimitivePolyBank(entries=[e for e in self.entries if e.degree == degree])


class SpreadingCode(BaseModel):
    """+/-1 chip sequence with the polynomial and LFSR seed that produced it"""
    chips: np.ndarray
    poly: Optional[PolyEntry] = None
    seed: Optional[int] = None

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def check_chips(self):
        self.chips = np.asarray(self.chips, dtype=np.int8)
        if self.chips.ndim != 1 or self.chips.size < 1:
            raise ValueError("a spreading code needs at least one chip")
        if not np.all(np.abs(self.chips) == 1):
            raise ValueError("chips must be +1 or -1")
        return self

    @property
    def length(self) -> int:
        return int(self.chips.size)
