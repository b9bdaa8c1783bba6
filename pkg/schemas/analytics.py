from typing import Optional

from pydantic import BaseModel, Field

from core.config import settings


class LinkBudget(BaseModel):
    """Transmit powers and noise floor in dBm, distances in meters"""
    P_a: float = Field(default=settings.TX_POWER_DBM, description="Legitimate transmit power (dBm)")
    P_e: float = Field(default=settings.TX_POWER_DBM, description="Jammer transmit power (dBm)")
    d_ab: float = Field(..., gt=0, description="Alice-Bob distance (m)")
    d_eb: float = Field(..., gt=0, description="Jammer-Bob distance (m)")
    alpha_pl: float = Field(default=settings.PATH_LOSS_EXPONENT, ge=2, description="Path-loss exponent")
    sigma_b2: float = Field(default=settings.NOISE_POWER_DBM, description="Noise power at Bob (dBm)")


class SuccessQuery(BaseModel):
    """
    One point of the success-probability surface. k_r is the effective key
    bits the attacker has to guess; phi defaults to the MAI approximation.
    """
    k_r: int = Field(..., ge=1, le=62)
    k_t: Optional[int] = Field(default=None, ge=1, description="Key bits used per transmission")
    gamma_th: float = Field(default=1.0, ge=0, description="Linear SINR threshold")
    L: int = Field(default=settings.SPREADING_LENGTH, ge=1)
    phi: Optional[float] = Field(default=None, ge=0)


class SuccessEstimate(BaseModel):
    closed_form: float
    approximation: float
    throughput: Optional[float] = None
    phi: float
    code_count: int


class SuccessRequest(SuccessQuery):
    """A success-probability query together with the link SNRs"""
    gamma_ab: float = Field(..., gt=0, description="Legitimate link SNR (linear)")
    gamma_eb: float = Field(..., ge=0, description="Jamming-to-noise ratio at Bob (linear)")
    rate: float = Field(default=settings.KEY_RATE_CFR, gt=0, description="Key bits per second for throughput")


class LinkGains(BaseModel):
    gamma_ab: float
    gamma_eb: float
