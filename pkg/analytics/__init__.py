from analytics.formulas import (
    MEASUREMENT_RATES,
    code_count,
    estimate_success,
    gammas_from_budget,
    key_generation_time,
    keytime_series,
    mai_phi,
    p_s_approx,
    p_s_broadband,
    p_s_closed_form,
    p_s_monte_carlo,
    reference_geometry,
    saturation_point,
    sinr_broadband,
    sinr_racs,
    throughput,
)
from analytics.stats import binomial_band, ks_exponential, monobit_test, runs_test, wilson_interval
