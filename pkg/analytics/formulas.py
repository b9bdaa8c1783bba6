"""
Closed-form link performance: SINR after despreading, the success
probability under rate-aware code selection and its MAI approximation,
throughput and key generation time.

Everything is linear scale; dB only appears at the LinkBudget boundary.
"""
import math
from typing import Dict, Iterable, List, Tuple

import numpy as np

from core.config import settings
from core.exceptions import DomainError, ValidationError
from schemas.analytics import LinkBudget, SuccessEstimate, SuccessQuery

MEASUREMENT_RATES: Dict[str, float] = {
    "RSS": settings.KEY_RATE_RSS,
    "CIR": settings.KEY_RATE_CIR,
    "CFR": settings.KEY_RATE_CFR,
}

ALICE_POSITION = (0.0, 0.0)
BOB_POSITION = (0.0, 20.0)
JAMMER_POSITION = (10.0 * math.sqrt(2.0), 10.0 * math.sqrt(2.0))


def db_to_linear(value_db: float) -> float:
    return 10.0 ** (value_db / 10.0)


def gammas_from_budget(budget: LinkBudget) -> Tuple[float, float]:
    """
    (gamma_ab, gamma_eb) = P * d^-alpha / sigma_b^2 in linear scale.
    """
    if budget.d_ab <= 0 or budget.d_eb <= 0:
        raise ValidationError("distances must be positive")
    noise = db_to_linear(budget.sigma_b2)
    gamma_ab = db_to_linear(budget.P_a) * budget.d_ab ** (-budget.alpha_pl) / noise
    gamma_eb = db_to_linear(budget.P_e) * budget.d_eb ** (-budget.alpha_pl) / noise
    return gamma_ab, gamma_eb


def reference_geometry(
    tx_power_dbm: float = settings.TX_POWER_DBM,
    alpha_pl: float = settings.PATH_LOSS_EXPONENT,
    noise_dbm: float = settings.NOISE_POWER_DBM,
) -> LinkBudget:
    """
    Reference layout: Alice at the origin, Bob 20 m north, the jammer on
    the diagonal at (10*sqrt2, 10*sqrt2).
    """
    return LinkBudget(
        P_a=tx_power_dbm,
        P_e=tx_power_dbm,
        d_ab=math.dist(ALICE_POSITION, BOB_POSITION),
        d_eb=math.dist(JAMMER_POSITION, BOB_POSITION),
        alpha_pl=alpha_pl,
        sigma_b2=noise_dbm,
    )


def _check_gains(*values: float) -> None:
    if any(v < 0 for v in values):
        raise ValidationError("SNRs and fading gains must be non-negative")


def sinr_broadband(gamma_ab: float, gamma_eb: float, g_ab, g_eb, L: int):
    """gamma_ab * L * g_ab / (gamma_eb * g_eb + 1)"""
    _check_gains(gamma_ab, gamma_eb)
    if L < 1:
        raise ValidationError("L must be at least 1")
    return gamma_ab * L * np.asarray(g_ab) / (gamma_eb * np.asarray(g_eb) + 1.0)


def sinr_racs(gamma_ab: float, gamma_eb: float, g_ab, g_eb, L: int, phi: float, S: int):
    """gamma_ab * g_ab / (gamma_eb * g_eb * phi / S + 1 / L)"""
    _check_gains(gamma_ab, gamma_eb, phi)
    if L < 1 or S < 1:
        raise ValidationError("L and S must be at least 1")
    return gamma_ab * np.asarray(g_ab) / (gamma_eb * np.asarray(g_eb) * phi / S + 1.0 / L)


def code_count(k_r: int) -> int:
    return (1 << k_r) - 1


def mai_phi(k_r: int, L: int) -> float:
    """1 + (2^k_r - 2) / (3L)"""
    return 1.0 + ((1 << k_r) - 2) / (3.0 * L)


def _success(gamma_th: float, gamma_ab: float, gamma_eb: float, L: int, phi: float, S: int) -> float:
    if gamma_ab <= 0:
        raise DomainError("gamma_ab must be positive")
    _check_gains(gamma_eb)
    return math.exp(-gamma_th / (gamma_ab * L)) / (gamma_th * gamma_eb * phi / (S * gamma_ab) + 1.0)


def p_s_closed_form(q: SuccessQuery, gamma_ab: float, gamma_eb: float) -> float:
    """
    Pr(SINR > gamma_th) with Rayleigh gains on both links, phi held fixed.
    """
    phi = q.phi if q.phi is not None else mai_phi(q.k_r, q.L)
    return _success(q.gamma_th, gamma_ab, gamma_eb, q.L, phi, code_count(q.k_r))


def p_s_approx(q: SuccessQuery, gamma_ab: float, gamma_eb: float) -> float:
    return _success(q.gamma_th, gamma_ab, gamma_eb, q.L, mai_phi(q.k_r, q.L), code_count(q.k_r))


def p_s_broadband(gamma_th: float, gamma_ab: float, gamma_eb: float, L: int) -> float:
    """
    Pr(SINR > gamma_th) under broadband jamming; the same form with S = L
    and phi = 1.
    """
    return _success(gamma_th, gamma_ab, gamma_eb, L, 1.0, L)


def p_s_monte_carlo(
    q: SuccessQuery,
    gamma_ab: float,
    gamma_eb: float,
    trials: int,
    rng: np.random.Generator,
    chunk: int = 250_000,
) -> Tuple[float, int]:
    """
    Sampling oracle for p_s_closed_form: draw |h_ab|^2, |h_eb|^2 ~ Exp(1)
    and threshold the despread SINR. Returns (estimate, successes).
    """
    if trials < 1:
        raise ValidationError("trials must be at least 1")
    if gamma_ab <= 0:
        raise DomainError("gamma_ab must be positive")
    phi = q.phi if q.phi is not None else mai_phi(q.k_r, q.L)
    S = code_count(q.k_r)
    successes = 0
    remaining = trials
    while remaining:
        n = min(chunk, remaining)
        g_ab = rng.exponential(1.0, n)
        g_eb = rng.exponential(1.0, n)
        successes += int(np.count_nonzero(sinr_racs(gamma_ab, gamma_eb, g_ab, g_eb, q.L, phi, S) > q.gamma_th))
        remaining -= n
    return successes / trials, successes


def throughput(k_r: float, k_t: int, P_s: float) -> float:
    """Successful transmissions per second: k_r * P_s / k_t."""
    if k_t <= 0:
        raise DomainError("k_t must be positive")
    return k_r * P_s / k_t


def key_generation_time(k_t: int, rate: float) -> float:
    if rate <= 0:
        raise DomainError("key generation rate must be positive")
    return k_t / rate


def keytime_series(k_t_values: Iterable[int]) -> List[Dict[str, float]]:
    """Seconds needed for each k_t under every measurement type."""
    rows = []
    for k_t in k_t_values:
        row = {"k_t": k_t}
        for name, rate in MEASUREMENT_RATES.items():
            row[name] = key_generation_time(k_t, rate)
        rows.append(row)
    return rows


def saturation_point(
    q: SuccessQuery,
    gamma_ab: float,
    gamma_eb: float,
    ratio: float = 0.99,
    k_max: int = 16,
) -> int:
    """
    Smallest key size whose approximate P_s reaches `ratio` of its value at
    k_max.
    """
    if not 0 < ratio <= 1:
        raise ValidationError("ratio must lie in (0, 1]")
    ceiling = p_s_approx(q.model_copy(update={"k_r": k_max}), gamma_ab, gamma_eb)
    for k in range(1, k_max + 1):
        if p_s_approx(q.model_copy(update={"k_r": k}), gamma_ab, gamma_eb) >= ratio * ceiling:
            return k
    return k_max


def estimate_success(q: SuccessQuery, gamma_ab: float, gamma_eb: float, rate: float = settings.KEY_RATE_CFR) -> SuccessEstimate:
    """
    Closed form, approximation and, when q.k_t is set, throughput at `rate`.
    """
    closed = p_s_closed_form(q, gamma_ab, gamma_eb)
    return SuccessEstimate(
        closed_form=closed,
        approximation=p_s_approx(q, gamma_ab, gamma_eb),
        throughput=throughput(rate, q.k_t, closed) if q.k_t is not None else None,
        phi=q.phi if q.phi is not None else mai_phi(q.k_r, q.L),
        code_count=code_count(q.k_r),
    )
