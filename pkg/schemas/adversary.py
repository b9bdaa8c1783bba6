from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field, model_validator


class JammerStrategy(str, Enum):
    BROADBAND = "broadband"
    RACS = "racs"
    REPLAY = "replay"
    NONE = "none"


class CodeRefresh(str, Enum):
    """How often the legitimate pair draws a new spreading code"""
    PER_FRAME = "per_frame"
    PER_SYMBOL = "per_symbol"


class RacsNormalization(str, Enum):
    NOMINAL = "nominal"
    AVERAGE = "average"


class JammerConfig(BaseModel):
    """
    Attacker model. gamma_eb is the linear per-chip jamming-to-noise ratio
    P_e * d_eb^-alpha / sigma_b^2.
    """
    strategy: JammerStrategy = JammerStrategy.RACS
    gamma_eb: float = Field(default=1.0, ge=0)
    k_r: Optional[int] = Field(default=None, ge=1, description="Key bits the RACS attacker enumerates")
    delay_symbols: int = Field(default=1, ge=1, description="Replay lag in symbols")
    include_legit: bool = Field(default=True, description="Whether the RACS enumeration may contain the legitimate seed")
    normalize: RacsNormalization = RacsNormalization.NOMINAL

    @model_validator(mode="after")
    def check_strategy_fields(self):
        if self.strategy == JammerStrategy.NONE:
            self.gamma_eb = 0.0
        return self

    @property
    def code_count(self) -> Optional[int]:
        return None if self.k_r is None else (1 << self.k_r) - 1
