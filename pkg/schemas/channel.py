from enum import Enum
from typing import List

import numpy as np
from pydantic import BaseModel, Field, ConfigDict, field_validator, model_validator


class ObservationRole(str, Enum):
    """Whose view of the reciprocal channel an observation holds"""
    ALICE = "alice_view"
    BOB = "bob_view"
    EVE = "eve_view"


class TapProfile(BaseModel):
    """Power-delay profile of the frequency-selective channel"""
    num_taps: int = Field(..., ge=1, description="Channel taps L_tap")
    tap_powers: List[float] = Field(..., description="Per-tap power, normalized to sum 1")
    sampling_period: float = Field(1e-7, gt=0, description="Tap spacing T in seconds")

    @model_validator(mode="after")
    def check_powers(self):
        if len(self.tap_powers) != self.num_taps:
            raise ValueError(f"expected {self.num_taps} tap powers, got {len(self.tap_powers)}")
        if any(p < 0 for p in self.tap_powers):
            raise ValueError("tap powers must be nonnegative")
        if abs(sum(self.tap_powers) - 1.0) > 1e-9:
            raise ValueError("tap powers must sum to 1")
        return self

    @classmethod
    def uniform(cls, num_taps: int, sampling_period: float = 1e-7) -> "TapProfile":
        return cls(num_taps=num_taps, tap_powers=[1.0 / num_taps] * num_taps, sampling_period=sampling_period)


class ProbingSchedule(BaseModel):
    """Timing of one reciprocal probing exchange"""
    T_P1: float = Field(..., ge=0, description="Alice's probing slot (s)")
    T_P2: float = Field(..., ge=0, description="Bob's probing slot (s)")
    T_s: float = Field(..., ge=0, description="RF chain switch time (s)")
    f_d: float = Field(..., ge=0, description="Doppler frequency (Hz)")

    model_config = ConfigDict(
        json_schema_extra={
            "example": {"T_P1": 0.005, "T_P2": 0.005, "T_s": 0.001, "f_d": 10.0}
        }
    )


class ChannelObservation(BaseModel):
    """Complex channel estimates over N probing slots x M subcarriers"""
    values: np.ndarray
    role: ObservationRole

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @field_validator("values")
    @classmethod
    def check_values(cls, v: np.ndarray) -> np.ndarray:
        v = np.atleast_2d(np.asarray(v, dtype=np.complex128))
        if v.ndim != 2 or v.shape[0] < 1 or v.shape[1] < 1:
            raise ValueError("observation must be an N x M matrix with N, M >= 1")
        if not np.all(np.isfinite(v)):
            raise ValueError("observation entries must be finite")
        return v

    @property
    def num_slots(self) -> int:
        return self.values.shape[0]

    @property
    def num_subcarriers(self) -> int:
        return self.values.shape[1]

    def magnitudes(self) -> np.ndarray:
        return np.abs(self.values)
