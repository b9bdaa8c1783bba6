"""
Tests for the binary BCH codec (coding/bch.py).

Exhaustive checks run at (15, 7, t=2); the production size (255, 131, t=18)
gets a short randomized pass by default and the full 10^4-trial pass under
the slow marker.
"""
from itertools import combinations
from pathlib import Path

import numpy as np
import pytest
from pydantic import ValidationError as SchemaError

from coding import bch
from core import bits as bitops
from core.exceptions import ParameterError, ValidationError
from schemas.coding import BchParams

SMALL = BchParams(n=15, k=7, t=2)
LARGE = BchParams(n=255, k=131, t=18)
VECTORS = Path(__file__).resolve().parents[1] / "data" / "bch_15_7_vectors.txt"


def _flip(word: np.ndarray, positions) -> np.ndarray:
    corrupted = word.copy()
    corrupted[list(positions)] ^= 1
    return corrupted


class TestBchParams:
    def test_non_mersenne_length_should_be_rejected(self):
        with pytest.raises(SchemaError):
            BchParams(n=16, k=7, t=2)

    def test_k_not_below_n_should_be_rejected(self):
        with pytest.raises(SchemaError):
            BchParams(n=15, k=15, t=1)

    def test_unachievable_t_should_raise_parameter_error(self):
        # Arrange: BCH(15, 7) corrects 2 errors, not 3
        params = BchParams(n=15, k=7, t=3)

        # Act / Assert
        with pytest.raises(ParameterError):
            bch.get_codec(params)


class TestEncode:
    def test_all_zero_message_should_give_all_zero_codeword(self):
        codeword = bch.encode(np.zeros(7, dtype=np.uint8), SMALL)

        assert codeword.size == 15
        assert not codeword.any()

    def test_codeword_should_be_systematic(self, rng):
        message = bitops.random_bits(7, rng)

        codeword = bch.encode(message, SMALL)

        np.testing.assert_array_equal(codeword[:7], message)

    def test_wrong_message_length_should_raise_validation_error(self):
        with pytest.raises(ValidationError):
            bch.encode(np.zeros(6, dtype=np.uint8), SMALL)

    def test_xor_of_codewords_should_be_codeword(self, rng):
        # Arrange
        c1 = bch.random_codeword(SMALL, rng)
        c2 = bch.random_codeword(SMALL, rng)

        # Act
        total = bitops.xor(c1, c2)

        # Assert
        assert bch.is_codeword(total, SMALL)
        assert not np.any(bch.syndrome(total, SMALL))

    def test_conformance_vectors_should_match(self):
        assert bch.check_conformance_vectors(VECTORS) == []

    def test_written_vectors_should_read_back(self, tmp_path, rng):
        # Arrange
        messages = [bitops.random_bits(7, rng) for _ in range(5)]
        path = tmp_path / "vectors.txt"

        # Act
        count = bch.write_conformance_vectors(path, SMALL, messages)
        vectors = bch.read_conformance_vectors(path)

        # Assert
        assert count == 5
        for message, (params, read_message, codeword) in zip(messages, vectors):
            assert params == SMALL
            np.testing.assert_array_equal(read_message, message)
            np.testing.assert_array_equal(codeword, bch.encode(message, SMALL))


class TestDecode:
    def test_uncorrupted_codeword_should_decode_with_zero_corrections(self, rng):
        codeword = bch.random_codeword(SMALL, rng)

        result = bch.decode(codeword, SMALL)

        assert result.success
        assert result.corrections == 0
        np.testing.assert_array_equal(result.codeword, codeword)

    def test_every_single_flip_should_be_corrected(self, rng):
        codeword = bch.random_codeword(SMALL, rng)

        for position in range(15):
            result = bch.decode(_flip(codeword, [position]), SMALL)

            assert result.success
            assert result.corrections == 1
            np.testing.assert_array_equal(result.codeword, codeword)

    def test_every_flip_pair_should_be_corrected(self, rng):
        for _ in range(4):
            codeword = bch.random_codeword(SMALL, rng)
            for pair in combinations(range(15), 2):
                result = bch.decode(_flip(codeword, pair), SMALL)

                assert result.success
                assert result.corrections == 2
                np.testing.assert_array_equal(result.codeword, codeword)

    def test_three_flips_should_never_return_original(self, rng):
        # Arrange
        codeword = bch.random_codeword(SMALL, rng)

        for triple in combinations(range(15), 3):
            received = _flip(codeword, triple)

            # Act
            result = bch.decode(received, SMALL)

            # Assert: bounded-distance, so either failure or a codeword within t
            if result.success:
                assert bitops.hamming(result.codeword, received) <= 2
                assert not np.array_equal(result.codeword, codeword)

    def test_wrong_length_should_raise_validation_error(self):
        with pytest.raises(ValidationError):
            bch.decode(np.zeros(14, dtype=np.uint8), SMALL)

    def test_large_code_should_correct_up_to_t(self, rng):
        for _ in range(50):
            codeword = bch.random_codeword(LARGE, rng)
            weight = int(rng.integers(0, LARGE.t + 1))
            positions = rng.choice(LARGE.n, size=weight, replace=False)

            result = bch.decode(_flip(codeword, positions), LARGE)

            assert result.success
            assert result.corrections == weight
            np.testing.assert_array_equal(result.codeword, codeword)

    @pytest.mark.slow
    def test_large_code_randomized_round_trip_should_hold(self, rng):
        for _ in range(10_000):
            message = bitops.random_bits(LARGE.k, rng)
            codeword = bch.encode(message, LARGE)
            positions = rng.choice(LARGE.n, size=int(rng.integers(0, LARGE.t + 1)), replace=False)

            result = bch.decode(_flip(codeword, positions), LARGE)

            assert result.success
            np.testing.assert_array_equal(result.codeword[:LARGE.k], message)


class TestSyndrome:
    def test_zero_syndrome_should_match_generator_divisibility(self, rng):
        codec = bch.get_codec(SMALL)
        for value in rng.integers(0, 1 << 15, size=500):
            word = bitops.from_int(int(value), 15)

            assert codec.is_codeword(word) == codec.divisible_by_generator(word)

    def test_all_codewords_of_small_code_should_have_zero_syndrome(self):
        codec = bch.get_codec(SMALL)
        for value in range(1 << SMALL.k):
            codeword = codec.encode(bitops.from_int(value, SMALL.k))

            assert codec.is_codeword(codeword)
            assert codec.divisible_by_generator(codeword)


class TestRandomCodeword:
    def test_identical_stream_state_should_give_identical_codewords(self):
        from core.rng import stream

        c1 = bch.random_codeword(SMALL, stream(7, "codeword"))
        c2 = bch.random_codeword(SMALL, stream(7, "codeword"))

        np.testing.assert_array_equal(c1, c2)

    def test_message_bits_should_be_balanced(self, rng):
        # Arrange
        draws = np.array([bch.random_codeword(SMALL, rng)[:SMALL.k] for _ in range(5_000)])

        # Act
        frequencies = draws.mean(axis=0)

        # Assert
        assert np.all(np.abs(frequencies - 0.5) < 0.03)
