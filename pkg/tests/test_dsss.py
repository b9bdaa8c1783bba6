"""
Tests for the polynomial bank, the LFSR and DSSS spreading.
"""
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings, strategies as st

from core import bits as bitops
from core.exceptions import ConfigurationError, ValidationError
from dsss import (
    check_bank,
    code_correlation,
    code_from_seed_value,
    despread,
    export_codes_csv,
    generate_bank,
    lfsr_generate,
    load_bank,
    measure_period,
    periodic_autocorrelation,
    save_bank,
    seed_from_bits,
    seed_value,
    select_polynomial,
    spread,
    ssg_code,
)
from dsss.bank import expected_count, parse_bank
from schemas.dsss import PolyEntry, PrimitivePolyBank, SpreadingCode

SMALL_BANK = Path(__file__).resolve().parents[1] / "data" / "banks" / "small_bank.txt"
X3_X_1 = PolyEntry(degree=3, tap_mask=0b011)


def _full_period(entry: PolyEntry, seed_value: int = 1) -> SpreadingCode:
    return lfsr_generate(entry, bitops.from_int(seed_value, entry.degree), entry.period)


def _cyclic_runs(bits: np.ndarray):
    """(value, length) for every run of the sequence read cyclically."""
    changes = np.flatnonzero(bits != np.roll(bits, 1))
    rotated = np.roll(bits, -changes[0])
    boundaries = np.flatnonzero(np.diff(rotated)) + 1
    starts = np.concatenate([[0], boundaries])
    lengths = np.diff(np.concatenate([starts, [rotated.size]]))
    return [(int(rotated[s]), int(n)) for s, n in zip(starts, lengths)]


class TestPolyEntry:
    def test_mask_wider_than_degree_should_be_rejected(self):
        with pytest.raises(ValueError):
            PolyEntry(degree=3, tap_mask=0b1011)

    def test_even_mask_should_be_rejected(self):
        with pytest.raises(ValueError):
            PolyEntry(degree=3, tap_mask=0b010)


class TestBank:
    def test_small_bank_should_load_and_verify(self):
        bank = load_bank(SMALL_BANK)

        assert len(bank) == 10
        assert [e.tap_mask for e in bank.of_degree(5).entries] == [0x5, 0x9, 0xF, 0x17, 0x1B, 0x1D]

    @pytest.mark.parametrize("degree, count", [(3, 2), (4, 2), (5, 6), (6, 6), (7, 18), (8, 16), (10, 60)])
    def test_generated_bank_should_match_totient_count(self, degree, count):
        bank = generate_bank([degree])

        assert len(bank) == count == expected_count(degree)

    def test_generated_degree_five_should_match_file(self):
        assert generate_bank([5]).entries == load_bank(SMALL_BANK).of_degree(5).entries

    def test_non_primitive_entry_should_report_line(self):
        # x^4 + x^3 + x^2 + x + 1 has period 5
        text = "# header\n4 3\n4 f\n"

        with pytest.raises(ConfigurationError) as exc:
            parse_bank(text)

        assert exc.value.line == 3

    def test_malformed_record_should_report_line(self):
        with pytest.raises(ConfigurationError) as exc:
            parse_bank("5 5\n5\n")

        assert exc.value.line == 2

    def test_empty_bank_should_raise(self):
        with pytest.raises(ConfigurationError):
            parse_bank("# nothing here\n\n")

    def test_saved_bank_should_load_back(self, tmp_path):
        bank = generate_bank([6, 7])
        path = tmp_path / "bank.txt"

        save_bank(path, bank)

        assert load_bank(path).entries == bank.entries

    def test_check_should_flag_failures_and_coverage(self, tmp_path):
        # Arrange
        path = tmp_path / "bank.txt"
        path.write_text("4 3\n4 9\n4 f\n4 3\n")

        # Act
        report = check_bank(path)

        # Assert
        assert report["failures"] == ["4:f"]
        assert report["duplicates"] == 1
        assert report["coverage"][4] == {"entries": 4, "expected": 2}
        assert report["valid"] is False


class TestSelectPolynomial:
    def test_zero_should_pick_first_entry(self):
        bank = load_bank(SMALL_BANK)

        assert select_polynomial(np.zeros(128, dtype=np.uint8), bank) == bank.entries[0]

    def test_bank_size_should_wrap_to_first_entry(self):
        bank = load_bank(SMALL_BANK)

        assert select_polynomial(bitops.from_int(len(bank), 128), bank) == bank.entries[0]

    def test_empty_bank_should_raise(self):
        with pytest.raises(ConfigurationError):
            select_polynomial(np.zeros(128, dtype=np.uint8), PrimitivePolyBank(entries=[]))

    def test_uniform_R_p_should_select_uniformly(self, rng):
        # Arrange
        bank = load_bank(SMALL_BANK)
        draws = 100_000
        counts = {e: 0 for e in bank.entries}

        # Act
        for row in rng.integers(0, 2, size=(draws, 128), dtype=np.uint8):
            counts[select_polynomial(row, bank)] += 1

        # Assert
        p = 1.0 / len(bank)
        sigma = np.sqrt(draws * p * (1 - p))
        assert all(abs(c - draws * p) <= 3 * sigma for c in counts.values())


class TestLfsr:
    def test_cubic_should_give_balanced_period_seven(self):
        code = lfsr_generate(X3_X_1, bitops.as_bits("001"), 14)

        bits = (1 - code.chips) // 2
        np.testing.assert_array_equal(bits[:7], bits[7:])
        assert int(bits[:7].sum()) == 4
        assert measure_period(X3_X_1) == 7

    def test_all_zero_seed_should_raise(self):
        with pytest.raises(ValidationError):
            lfsr_generate(X3_X_1, np.zeros(3, dtype=np.uint8), 7)

    def test_wrong_seed_length_should_raise(self):
        with pytest.raises(ValidationError):
            lfsr_generate(X3_X_1, np.ones(4, dtype=np.uint8), 7)

    def test_same_seed_should_give_same_chips(self):
        entry = generate_bank([10]).entries[7]
        seed = bitops.from_int(0x155, 10)

        np.testing.assert_array_equal(
            lfsr_generate(entry, seed, 1024).chips, lfsr_generate(entry, seed, 1024).chips
        )

    def test_recurrence_should_hold_for_output(self):
        # Arrange: a[k+n] = sum c_i a[k+i]
        entry = PolyEntry(degree=5, tap_mask=0x1D)
        code = lfsr_generate(entry, bitops.as_bits("10110"), 62)
        a = (1 - code.chips.astype(int)) // 2
        taps = [i for i in range(5) if entry.tap_mask >> i & 1]

        # Act / Assert
        for k in range(62 - 5):
            assert a[k + 5] == sum(a[k + i] for i in taps) % 2

    def test_seed_should_be_first_output_bits(self):
        entry = PolyEntry(degree=5, tap_mask=0x5)
        seed = bitops.as_bits("01101")

        code = lfsr_generate(entry, seed, 5)

        np.testing.assert_array_equal((1 - code.chips) // 2, seed)

    def test_padded_length_should_append_first_chip(self):
        entry = generate_bank([10]).entries[0]

        code = lfsr_generate(entry, bitops.from_int(1, 10), 1024)

        assert code.chips[1023] == code.chips[0]


class TestMSequenceProperties:
    @pytest.mark.parametrize("degree", [3, 4, 5, 6, 7, 8, 9, 10])
    def test_every_bank_entry_should_be_an_m_sequence(self, degree):
        for entry in generate_bank([degree]).entries:
            # Arrange
            code = _full_period(entry)
            bits = (1 - code.chips) // 2
            n = degree

            # Act
            period = measure_period(entry)
            runs = _cyclic_runs(bits)
            autocorrelation = periodic_autocorrelation(code)

            # Assert
            assert period == 2 ** n - 1
            assert int(bits.sum()) == 2 ** (n - 1)
            assert len(runs) == 2 ** (n - 1)
            for k in range(1, n - 1):
                assert runs.count((1, k)) == 2 ** (n - k - 2)
                assert runs.count((0, k)) == 2 ** (n - k - 2)
            assert runs.count((0, n - 1)) == 1
            assert runs.count((1, n)) == 1
            assert autocorrelation[0] == 1.0
            np.testing.assert_allclose(autocorrelation[1:], -1.0 / period)

    @pytest.mark.slow
    @pytest.mark.parametrize("degree", [11, 12, 13])
    def test_larger_degrees_should_have_full_period(self, degree):
        for entry in generate_bank([degree]).entries:
            assert measure_period(entry) == 2 ** degree - 1


class TestSpreading:
    def test_positive_symbol_should_reproduce_code(self):
        code = _full_period(X3_X_1)

        np.testing.assert_array_equal(spread(np.array([1]), code), code.chips)

    def test_negative_symbol_should_negate_code(self):
        code = _full_period(X3_X_1)

        np.testing.assert_array_equal(spread(np.array([-1]), code), -code.chips)

    @pytest.mark.parametrize("L", [1, 7, 63, 1024])
    def test_despread_of_spread_should_be_identity(self, L, rng):
        code = SpreadingCode(chips=rng.choice([-1, 1], size=L))
        symbols = rng.choice([-1, 1], size=50)

        np.testing.assert_array_equal(despread(spread(symbols, code), code), symbols)

    def test_empty_symbols_should_raise(self):
        with pytest.raises(ValidationError):
            spread(np.array([]), _full_period(X3_X_1))

    def test_length_mismatch_should_raise(self):
        with pytest.raises(ValidationError):
            despread(np.ones(10), _full_period(X3_X_1))

    def test_noise_variance_should_shrink_by_L(self, rng):
        # Arrange
        code = _full_period(PolyEntry(degree=6, tap_mask=0x3))
        sigma2 = 2.0
        noise = rng.normal(0.0, np.sqrt(sigma2), size=100_000 * code.length)

        # Act
        statistics = despread(noise, code)

        # Assert
        assert statistics.var() == pytest.approx(sigma2 / code.length, rel=0.1)

    def test_other_m_sequence_should_interfere_weakly(self, rng):
        # Arrange
        first, second = generate_bank([10]).entries[:2]
        L = first.period
        magnitudes = []

        # Act
        for _ in range(10_000):
            a = code_from_seed_value(first, int(rng.integers(1, 1024)), 10, L, exact=True)
            b = code_from_seed_value(second, int(rng.integers(1, 1024)), 10, L, exact=True)
            symbol = rng.choice([-1, 1], size=1)
            magnitudes.append(abs(despread(spread(symbol, b), a)[0]))

        # Assert
        assert np.mean(magnitudes) <= 3 / np.sqrt(L)


class TestCodeCorrelation:
    def test_identical_codes_should_correlate_to_one(self):
        code = _full_period(X3_X_1)

        assert code_correlation(code, code) == 1.0

    def test_antipodal_codes_should_correlate_to_minus_one(self):
        code = _full_period(X3_X_1)

        assert code_correlation(code, SpreadingCode(chips=-code.chips)) == -1.0

    def test_shifted_m_sequences_should_correlate_to_minus_one_over_period(self):
        entry = PolyEntry(degree=5, tap_mask=0x9)
        reference = _full_period(entry, 1)

        for seed_value in range(2, 32):
            assert code_correlation(reference, _full_period(entry, seed_value)) == pytest.approx(-1 / 31)

    def test_length_mismatch_should_raise(self):
        with pytest.raises(ValidationError):
            code_correlation(_full_period(X3_X_1), SpreadingCode(chips=np.ones(8)))


class TestSsg:
    def test_short_key_should_keep_integer_value(self):
        np.testing.assert_array_equal(seed_from_bits(bitops.as_bits("101"), 6), bitops.as_bits("000101"))

    def test_all_zero_bits_should_become_seed_one(self):
        np.testing.assert_array_equal(seed_from_bits(np.zeros(4, dtype=np.uint8), 5), bitops.as_bits("00001"))

    def test_long_R_s_should_use_leading_bits(self):
        np.testing.assert_array_equal(seed_from_bits(bitops.as_bits("1100111"), 4), bitops.as_bits("1100"))

    @pytest.mark.parametrize("key_bits", [1, 3, 6, 9])
    def test_seed_value_should_agree_with_seed_bits(self, key_bits):
        for value in range(1 << key_bits):
            expected = bitops.to_int(seed_from_bits(bitops.from_int(value, key_bits), 6))
            assert seed_value(value, key_bits, 6) == expected

    def test_ssg_code_should_match_enumerated_seed(self, rng):
        # Arrange
        bank = generate_bank([7])
        R_s = bitops.random_bits(256, rng)
        R_p = bitops.random_bits(128, rng)

        # Act
        code = ssg_code(R_s, R_p, bank, L=127, exact=True, seed_bits=5)

        # Assert
        expected = code_from_seed_value(select_polynomial(R_p, bank), bitops.to_int(R_s[:5]) or 1, 5, 127, True)
        np.testing.assert_array_equal(code.chips, expected.chips)
        assert code.length == 127

    def test_exported_codes_should_have_one_row_each(self, tmp_path):
        codes = [_full_period(X3_X_1, s) for s in (1, 2, 3)]
        path = tmp_path / "codes.csv"

        count = export_codes_csv(path, codes)

        lines = path.read_text().splitlines()
        assert count == 3
        assert lines[0].split(",")[:2] == ["3:3", "1"]
        assert len(lines[0].split(",")) == 2 + 7


class TestProperties:
    @given(st.lists(st.integers(0, 1), min_size=1, max_size=40), st.integers(2, 16))
    def test_seed_should_never_be_all_zero(self, bits, degree):
        seed = seed_from_bits(np.array(bits, dtype=np.uint8), degree)

        assert seed.size == degree
        assert seed.any()

    @given(st.integers(0, 2 ** 128 - 1))
    def test_selected_polynomial_should_come_from_bank(self, value):
        bank = load_bank(SMALL_BANK)

        entry = select_polynomial(bitops.from_int(value, 128), bank)

        assert entry == bank.entries[value % len(bank)]

    @hypothesis_settings(max_examples=50)
    @given(st.lists(st.sampled_from([-1.0, 1.0]), min_size=1, max_size=20), st.integers(1, 7))
    def test_despread_should_invert_spread(self, symbols, seed_value):
        code = _full_period(X3_X_1, seed_value)

        recovered = despread(spread(np.array(symbols), code), code)

        np.testing.assert_allclose(recovered, symbols)
