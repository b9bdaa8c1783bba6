# /core/config.py

from typing import List

from pydantic_settings import BaseSettings
from pydantic import Field, ConfigDict


class Settings(BaseSettings):
    """
    Manages lab settings using Pydantic.
    Reads environment variables from a .env file; every value here is a
    default that an experiment config file may override.
    """
    DATABASE_URL: str = Field(default="sqlite:///./phykey_runs.db", description="Run registry database URL")
    LOG_LEVEL: str = Field(default="INFO", description="Application log level")
    ENVIRONMENT: str = Field(default="local", description="Application environment (local, dev, prod)")
    TOOL_VERSION: str = "1.0.0"

    # --- Channel simulation ---
    PROBE_ERROR_VARIANCE: float = Field(default=0.01, description="Variance of Bob's probing error")
    EVE_OFFSET_VARIANCE: float = Field(default=1.0, description="Variance of the attacker's observation offset")
    NUM_TAPS: int = Field(default=4, description="Channel taps of the default power-delay profile")
    NUM_SUBCARRIERS: int = Field(default=64, description="Subcarriers per pilot OFDM symbol")
    NUM_PROBING_SLOTS: int = Field(default=8, description="Probing slots per key block")

    # --- Shared randomness extraction ---
    QUANT_ALPHA: float = Field(default=0.1, description="Quantizer guard-band tuning factor")
    QUANT_USE_STD: bool = Field(default=False, description="Use alpha*sigma instead of alpha*sigma^2 for thresholds")
    BCH_N: int = 255
    BCH_K: int = 131
    BCH_T: int = 18
    DECORRELATION_THRESHOLD: float = Field(default=0.25, description="Adjacent-subcarrier key correlation limit")

    # --- Random seed generation ---
    NUM_POOLS: int = Field(default=12, description="Entropy pools P_0..P_U")
    MIN_POOL_ENTROPY_BITS: int = Field(default=128, description="Declared pool-0 entropy required to reseed")
    SEED_LENGTH_BITS: int = Field(default=256, description="Length s_l of R_s")

    # --- DSSS ---
    SPREADING_LENGTH: int = Field(default=1024, description="Chips per symbol L")
    EXACT_MSEQ_LENGTH: bool = Field(default=False, description="Use 2^n - 1 chips instead of padding to L")
    BANK_DEGREES: List[int] = Field(default=[10], description="LFSR degrees in the default polynomial bank")

    # --- Adversary ---
    RACS_CODE_CAP: int = Field(default=2 ** 16, description="Largest RACS code set the attacker may enumerate")

    # --- Analytics ---
    PATH_LOSS_EXPONENT: float = 3.0
    NOISE_POWER_DBM: float = -90.0
    TX_POWER_DBM: float = 45.0
    KEY_RATE_RSS: float = 4.0
    KEY_RATE_CIR: float = 15.0
    KEY_RATE_CFR: float = 16.0

    # --- Harness ---
    SYMBOLS_PER_FRAME: int = Field(default=100, description="Symbols spread per Monte Carlo trial")
    DEFAULT_TRIALS: int = Field(default=1000, description="Trials per k_t point when the config omits them")
    KEY_FAILURE_POLICY: str = Field(default="count-as-failure", description="count-as-failure or retry")
    MAX_KEY_RETRIES: int = Field(default=3, description="Extra probing rounds under the retry policy")
    RECORD_RUNS: bool = Field(default=True, description="Record campaigns in the run registry")

    model_config = ConfigDict(
        # The name of the file to load environment variables from.
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore"
    )


# Create a single, reusable instance of the settings.
settings = Settings()
