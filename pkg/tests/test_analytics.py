"""
Tests for the closed-form performance formulas and statistics helpers.
"""
import math

import numpy as np
import pytest
from pydantic import ValidationError as SchemaError

from analytics import (
    MEASUREMENT_RATES,
    binomial_band,
    gammas_from_budget,
    key_generation_time,
    keytime_series,
    ks_exponential,
    mai_phi,
    monobit_test,
    p_s_approx,
    p_s_closed_form,
    p_s_monte_carlo,
    reference_geometry,
    runs_test,
    saturation_point,
    sinr_broadband,
    sinr_racs,
    throughput,
    wilson_interval,
)
from core.exceptions import DomainError
from schemas.analytics import LinkBudget, SuccessQuery


class TestLinkBudget:
    def test_unit_case_should_give_unit_gamma(self):
        budget = LinkBudget(P_a=-90.0, P_e=-90.0, d_ab=1.0, d_eb=1.0, sigma_b2=-90.0)

        gamma_ab, gamma_eb = gammas_from_budget(budget)

        assert gamma_ab == pytest.approx(1.0)
        assert gamma_eb == pytest.approx(1.0)

    def test_reference_geometry_should_place_nodes(self):
        budget = reference_geometry()

        assert budget.d_ab == pytest.approx(20.0)
        assert budget.d_eb == pytest.approx(15.31, abs=0.01)

    def test_doubling_distance_should_cut_gamma_eightfold(self):
        near = LinkBudget(d_ab=10.0, d_eb=10.0, alpha_pl=3.0)
        far = LinkBudget(d_ab=20.0, d_eb=10.0, alpha_pl=3.0)

        assert gammas_from_budget(near)[0] / gammas_from_budget(far)[0] == pytest.approx(8.0)

    def test_nonpositive_distance_should_be_rejected(self):
        with pytest.raises(SchemaError):
            LinkBudget(d_ab=0.0, d_eb=10.0)


class TestSinr:
    def test_no_jammer_should_give_full_processing_gain(self):
        assert sinr_broadband(3.0, 0.0, 1.0, 1.0, 64) == pytest.approx(192.0)

    def test_direct_substitution_should_give_half(self):
        assert sinr_broadband(1.0, 1.0, 1.0, 1.0, 1) == pytest.approx(0.5)

    @pytest.mark.parametrize("gamma_ab, gamma_eb, g_ab, g_eb, L", [(1.0, 1.0, 1.0, 1.0, 1), (5.0, 2.0, 0.3, 1.7, 64)])
    def test_single_matching_code_should_equal_broadband(self, gamma_ab, gamma_eb, g_ab, g_eb, L):
        assert sinr_racs(gamma_ab, gamma_eb, g_ab, g_eb, L, 1.0, 1) == pytest.approx(
            sinr_broadband(gamma_ab, gamma_eb, g_ab, g_eb, L)
        )

    def test_racs_without_jammer_should_give_full_gain(self):
        assert sinr_racs(2.0, 0.0, 0.5, 1.0, 128, 1.0, 7) == pytest.approx(128.0)

    def test_huge_code_set_should_leave_only_noise(self):
        assert sinr_racs(1.0, 10.0, 1.0, 1.0, 64, 1.0, 10 ** 12) == pytest.approx(64.0, rel=1e-6)

    def test_broadband_should_match_chip_level_simulation(self, rng):
        # Arrange: real +/-1 chips, complex unit noise and Gaussian jamming
        L, gamma_ab, gamma_eb = 255, 0.5, 3.0
        code = rng.choice([-1.0, 1.0], size=L)
        num_symbols = 4000

        # Act
        interference = np.sqrt((gamma_eb + 1.0) / 2) * (
            rng.standard_normal((num_symbols, L)) + 1j * rng.standard_normal((num_symbols, L))
        )
        residual = interference @ code / L
        measured = gamma_ab / np.mean(np.abs(residual) ** 2)

        # Assert
        assert measured == pytest.approx(sinr_broadband(gamma_ab, gamma_eb, 1.0, 1.0, L), rel=0.1)


class TestSuccessProbability:
    def test_zero_threshold_should_always_succeed(self):
        assert p_s_closed_form(SuccessQuery(k_r=4, gamma_th=0.0, L=64), 2.0, 5.0) == 1.0

    def test_unit_point_should_match_direct_evaluation(self):
        q = SuccessQuery(k_r=1, gamma_th=1.0, L=1, phi=1.0)

        assert p_s_closed_form(q, 1.0, 1.0) == pytest.approx(math.exp(-1) / 2, abs=1e-5)
        assert p_s_closed_form(q, 1.0, 1.0) == pytest.approx(0.18394, abs=1e-5)

    def test_zero_gamma_ab_should_raise_domain_error(self):
        with pytest.raises(DomainError):
            p_s_closed_form(SuccessQuery(k_r=2), 0.0, 1.0)

    def test_one_key_bit_approximation_should_equal_closed_form(self):
        q = SuccessQuery(k_r=1, gamma_th=2.0, L=16)

        assert p_s_approx(q, 3.0, 4.0) == p_s_closed_form(q.model_copy(update={"phi": 1.0}), 3.0, 4.0)

    def test_approximation_should_be_nondecreasing_in_key_bits(self):
        values = [p_s_approx(SuccessQuery(k_r=k, L=256), 10.0, 10.0) for k in range(1, 17)]

        assert all(b >= a for a, b in zip(values, values[1:]))

    def test_long_codes_should_approach_certainty(self):
        assert p_s_approx(SuccessQuery(k_r=16, L=10 ** 9), 10.0, 10.0) > 0.999

    def test_probability_should_be_monotone_in_every_argument(self):
        base = dict(k_r=4, gamma_th=1.0, L=64)
        p = lambda gab, geb, **kw: p_s_closed_form(SuccessQuery(**{**base, **kw}), gab, geb)

        assert p(10.0, 5.0) >= p(10.0, 6.0)
        assert p(10.0, 5.0, gamma_th=1.0) >= p(10.0, 5.0, gamma_th=2.0)
        assert p(11.0, 5.0) >= p(10.0, 5.0)
        assert p(10.0, 5.0, L=128) >= p(10.0, 5.0, L=64)

    @pytest.mark.parametrize("k_r", [1, 3, 8])
    @pytest.mark.parametrize("L", [64, 1024])
    @pytest.mark.parametrize("gamma_ab, gamma_eb", [(10.0, 10.0), (10.0, 1.0)])
    def test_monte_carlo_oracle_should_agree_with_closed_form(self, k_r, L, gamma_ab, gamma_eb):
        # Arrange
        q = SuccessQuery(k_r=k_r, gamma_th=1.0, L=L)
        trials = 100_000
        rng = np.random.default_rng(k_r * 1000 + L)

        # Act
        estimate, _ = p_s_monte_carlo(q, gamma_ab, gamma_eb, trials, rng)

        # Assert
        low, high = binomial_band(p_s_closed_form(q, gamma_ab, gamma_eb), trials, 3.0)
        assert low <= estimate <= high

    @pytest.mark.slow
    def test_full_oracle_grid_should_agree_at_a_million_trials(self):
        for k_r in range(1, 9):
            for L in (64, 1024):
                for gamma_ab, gamma_eb in ((10.0, 10.0), (10.0, 1.0)):
                    q = SuccessQuery(k_r=k_r, gamma_th=1.0, L=L)
                    rng = np.random.default_rng(k_r * 1000 + L + int(gamma_eb))

                    estimate, _ = p_s_monte_carlo(q, gamma_ab, gamma_eb, 1_000_000, rng)

                    low, high = binomial_band(p_s_closed_form(q, gamma_ab, gamma_eb), 1_000_000, 3.0)
                    assert low <= estimate <= high


class TestSaturation:
    def test_reference_geometry_should_be_within_one_percent_at_eight_bits(self):
        # Arrange
        gamma_ab, gamma_eb = gammas_from_budget(reference_geometry())
        q = SuccessQuery(k_r=1, gamma_th=1.0, L=1024)

        # Act
        knee = saturation_point(q, gamma_ab, gamma_eb)
        values = [p_s_approx(q.model_copy(update={"k_r": k}), gamma_ab, gamma_eb) for k in range(1, 17)]

        # Assert
        assert knee == 8
        assert all(b >= a for a, b in zip(values, values[1:]))
        assert values[7] / values[15] >= 0.99
        assert values[6] / values[15] == pytest.approx(0.9828, abs=1e-3)

    def test_weaker_jammer_should_be_within_one_percent_at_seven_bits(self):
        # Arrange
        budget = reference_geometry().model_copy(update={"P_e": 42.0})
        gamma_ab, gamma_eb = gammas_from_budget(budget)
        q = SuccessQuery(k_r=1, gamma_th=1.0, L=1024)

        # Act
        knee = saturation_point(q, gamma_ab, gamma_eb)
        at_7 = p_s_approx(q.model_copy(update={"k_r": 7}), gamma_ab, gamma_eb)
        at_16 = p_s_approx(q.model_copy(update={"k_r": 16}), gamma_ab, gamma_eb)

        # Assert
        assert knee == 7
        assert at_7 / at_16 >= 0.99

    def test_full_ratio_should_return_last_key_size(self):
        q = SuccessQuery(k_r=1, gamma_th=1.0, L=64)

        assert saturation_point(q, 10.0, 10.0, ratio=1.0, k_max=8) == 8


class TestThroughput:
    def test_zero_success_should_give_zero(self):
        assert throughput(16, 8, 0.0) == 0.0

    def test_substitution_should_give_expected_value(self):
        assert throughput(16, 8, 0.9) == pytest.approx(1.8)

    def test_doubling_key_bits_should_halve(self):
        assert throughput(16, 8, 0.5) == pytest.approx(2 * throughput(16, 16, 0.5))

    def test_zero_key_bits_should_raise_domain_error(self):
        with pytest.raises(DomainError):
            throughput(16, 0, 0.5)

    def test_reference_geometry_shape_should_hold(self):
        # Arrange
        gamma_ab, gamma_eb = gammas_from_budget(reference_geometry())

        def curve(L, rate):
            return [
                throughput(rate, k, p_s_approx(SuccessQuery(k_r=k, gamma_th=1.0, L=L), gamma_ab, gamma_eb))
                for k in range(1, 17)
            ]

        # Act
        by_length = {L: curve(L, MEASUREMENT_RATES["CFR"]) for L in (64, 256, 1024)}
        by_rate = {name: curve(1024, rate) for name, rate in MEASUREMENT_RATES.items()}

        # Assert
        for values in by_length.values():
            assert all(b < a for a, b in zip(values, values[1:]))
        for k in range(16):
            assert by_length[64][k] < by_length[256][k] < by_length[1024][k]
            assert by_rate["CFR"][k] > by_rate["CIR"][k] > by_rate["RSS"][k]


class TestKeyGenerationTime:
    def test_rss_rate_should_need_two_seconds_for_eight_bits(self):
        assert key_generation_time(8, MEASUREMENT_RATES["RSS"]) == pytest.approx(2.0)

    def test_cfr_rate_should_need_one_second_for_sixteen_bits(self):
        assert key_generation_time(16, MEASUREMENT_RATES["CFR"]) == pytest.approx(1.0)

    def test_nonpositive_rate_should_raise_domain_error(self):
        with pytest.raises(DomainError):
            key_generation_time(8, 0.0)

    def test_series_should_order_measurement_types(self):
        for row in keytime_series(range(1, 33)):
            assert row["RSS"] > row["CIR"] > row["CFR"]


class TestStats:
    def test_wilson_interval_should_bracket_estimate(self):
        low, high = wilson_interval(37, 100)

        assert low < 0.37 < high
        assert low == pytest.approx(0.2818, abs=1e-3)
        assert high == pytest.approx(0.4677, abs=1e-3)

    def test_wilson_interval_should_handle_extremes(self):
        low, high = wilson_interval(0, 50)

        assert low == pytest.approx(0.0, abs=1e-12)
        assert 0 < high < 0.1

    def test_monobit_should_reject_constant_stream(self):
        assert monobit_test(np.ones(1000, dtype=np.uint8)) < 1e-6

    def test_runs_should_reject_alternating_stream(self):
        assert runs_test(np.tile([0, 1], 500).astype(np.uint8)) < 1e-6

    def test_random_bits_should_pass_both_tests(self, rng):
        bits = rng.integers(0, 2, size=100_000, dtype=np.uint8)

        assert monobit_test(bits) > 0.001
        assert runs_test(bits) > 0.001

    def test_exponential_samples_should_pass_ks(self, rng):
        assert ks_exponential(rng.exponential(1.0, 10_000)) > 0.001

    def test_mai_phi_should_vanish_for_one_key_bit(self):
        assert mai_phi(1, 64) == 1.0
