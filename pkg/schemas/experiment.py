from enum import Enum
from typing import List, Literal, Optional

from pydantic import BaseModel, Field, ConfigDict, field_validator, model_validator

from channel.sim import coherence_time, schedule_valid
from core.config import settings
from core.exceptions import DomainError
from schemas.adversary import CodeRefresh, JammerConfig, JammerStrategy
from schemas.analytics import LinkBudget
from schemas.channel import ProbingSchedule
from schemas.coding import BchParams
from schemas.extractor import QuantizerConfig


class KeyFailurePolicy(str, Enum):
    COUNT_AS_FAILURE = "count-as-failure"
    RETRY = "retry"


class ChannelConfig(BaseModel):
    """Probing setup shared by every trial"""
    num_taps: int = Field(default=settings.NUM_TAPS, ge=1)
    num_subcarriers: int = Field(default=settings.NUM_SUBCARRIERS, ge=1)
    num_slots: int = Field(default=settings.NUM_PROBING_SLOTS, ge=1)
    probe_error_variance: float = Field(default=settings.PROBE_ERROR_VARIANCE, ge=0)
    eve_offset_variance: float = Field(default=settings.EVE_OFFSET_VARIANCE, ge=0)

    @model_validator(mode="after")
    def check_layout(self):
        if self.num_subcarriers < self.num_taps:
            raise ValueError("num_subcarriers must be at least num_taps")
        if self.eve_offset_variance < self.probe_error_variance:
            raise ValueError("eve_offset_variance must not be smaller than probe_error_variance")
        return self


class ExperimentConfig(BaseModel):
    """
    One campaign. When gamma_ab is given it is used together with
    jammer.gamma_eb; otherwise both come from link_budget, which defaults to
    the reference node layout.
    """
    schema_version: Literal[1] = 1
    scenario: str = Field(..., min_length=1)
    master_seed: int = Field(default=0, ge=0, lt=2 ** 64)
    trials: int = Field(default=settings.DEFAULT_TRIALS, ge=1)
    k_t_sweep: List[int] = Field(..., min_length=1, description="Key bits per transmission to sweep")
    L: int = Field(default=settings.SPREADING_LENGTH, ge=1)
    exact_length: bool = Field(default=settings.EXACT_MSEQ_LENGTH)
    gamma_th: float = Field(default=1.0, ge=0)
    gamma_ab: Optional[float] = Field(default=None, gt=0)
    link_budget: Optional[LinkBudget] = None
    schedule: Optional[ProbingSchedule] = None
    channel: ChannelConfig = ChannelConfig()
    quantizer: QuantizerConfig = QuantizerConfig()
    bch: BchParams = BchParams(n=settings.BCH_N, k=settings.BCH_K, t=settings.BCH_T)
    num_pools: int = Field(default=settings.NUM_POOLS, ge=1)
    min_pool_entropy: Optional[int] = Field(default=None, ge=0, description="Defaults to k_t")
    seed_length: int = Field(default=settings.SEED_LENGTH_BITS, ge=1)
    single_source_feed: bool = Field(default=True, description="Feed the key to pool 0 only")
    bank_path: Optional[str] = None
    bank_degrees: List[int] = Field(default_factory=lambda: list(settings.BANK_DEGREES))
    jammer: JammerConfig = JammerConfig()
    code_refresh: Optional[CodeRefresh] = None
    symbols_per_frame: int = Field(default=settings.SYMBOLS_PER_FRAME, ge=1)
    key_failure_policy: KeyFailurePolicy = KeyFailurePolicy(settings.KEY_FAILURE_POLICY)
    max_key_retries: int = Field(default=settings.MAX_KEY_RETRIES, ge=0)
    measurement_rate: float = Field(default=settings.KEY_RATE_CFR, gt=0, description="Key bits per second")

    model_config = ConfigDict(extra="forbid")

    @field_validator("k_t_sweep")
    @classmethod
    def check_sweep(cls, values: List[int]) -> List[int]:
        if any(k < 1 for k in values):
            raise ValueError("every k_t must be at least 1")
        return values

    @field_validator("schedule")
    @classmethod
    def check_schedule(cls, s: Optional[ProbingSchedule]) -> Optional[ProbingSchedule]:
        if s is None:
            return s
        budget = s.T_P1 + s.T_P2 + s.T_s
        try:
            valid = schedule_valid(s)
        except DomainError as e:
            raise ValueError(e.message)
        if not valid:
            raise ValueError(
                f"probing exchange of {budget:.6g} s exceeds coherence time {coherence_time(s.f_d):.6g} s"
            )
        return s

    @property
    def refresh(self) -> CodeRefresh:
        if self.code_refresh is not None:
            return self.code_refresh
        if self.jammer.strategy == JammerStrategy.REPLAY:
            return CodeRefresh.PER_SYMBOL
        return CodeRefresh.PER_FRAME


class TrialRecord(BaseModel):
    """Outcome of one end-to-end pipeline pass"""
    trial: int
    k_t: int
    key_agreed: bool
    key_retries: int = 0
    codes_match: bool = False
    code_length: Optional[int] = None
    sinr: Optional[float] = None
    sinr_analytic: Optional[float] = None
    phi: Optional[float] = None
    jam_papr: Optional[float] = Field(default=None, description="Peak-to-average chip power of the RACS sum")
    symbol_errors: int = 0
    symbols: int = 0
    success: bool = False
    failure: Optional[str] = None


class ResultRow(BaseModel):
    k_t: int
    L: int
    P_s_simulated: float = Field(..., ge=0, le=1)
    P_s_closed_form: float = Field(..., ge=0, le=1)
    P_s_approx: float = Field(..., ge=0, le=1)
    T_s: float = Field(..., ge=0)
    trials: int = Field(..., ge=1)
    wilson_ci_low: float = Field(..., ge=0, le=1)
    wilson_ci_high: float = Field(..., ge=0, le=1)
    key_agreement_rate: float = Field(..., ge=0, le=1)
    phi_measured: Optional[float] = None
    symbol_error_rate: float = Field(default=0.0, ge=0, le=1)

    @model_validator(mode="after")
    def check_interval(self):
        if not self.wilson_ci_low <= self.P_s_simulated <= self.wilson_ci_high:
            raise ValueError("Wilson interval must bracket the simulated estimate")
        return self


class CampaignResult(BaseModel):
    scenario: str
    master_seed: int
    config_hash: str
    rows: List[ResultRow]
    summary: dict = {}
