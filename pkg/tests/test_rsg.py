"""
Tests for the Fortuna-style random seed generator.
"""
import hashlib

import numpy as np
import pytest

from analytics.stats import monobit_test, runs_test
from core import bits as bitops
from core.exceptions import NotSeededError, ReseedRefused, ValidationError
from rsg import SeedGenerator, Transcript, generate, new_state, next_seed_pair, pool_feed, reseed
from rsg.fortuna import EMPTY_POOL, aes256_encrypt_block, pools_for_reseed


def _seeded_state(event: bytes = b"channel-key", bits: int = 128):
    state = pool_feed(new_state(), 0, event, bits)
    return reseed(state, min_pool_entropy=bits)


class TestPoolFeed:
    def test_identical_events_should_give_identical_digests(self):
        a = pool_feed(new_state(), 3, b"event", 8)
        b = pool_feed(new_state(), 3, b"event", 8)

        assert a.pools[3] == b.pools[3]
        assert a.pools[3] == hashlib.sha256(EMPTY_POOL + b"event").digest()

    def test_source_ids_should_wrap_around_pools(self):
        state = new_state(12)

        a = pool_feed(state, 0, b"x")
        b = pool_feed(state, 12, b"x")

        assert a.pools == b.pools

    def test_pool_digest_should_stay_32_bytes(self):
        state = new_state()
        for i in range(50):
            state = pool_feed(state, i, bytes([i]) * (i + 1), 1)

        assert all(len(p) == 32 for p in state.pools)
        assert sum(state.pool_fill_bits) == 50

    def test_empty_event_should_raise(self):
        with pytest.raises(ValidationError):
            pool_feed(new_state(), 0, b"")


class TestReseed:
    def test_starved_pool_should_refuse(self):
        state = pool_feed(new_state(), 0, b"x", 10)

        with pytest.raises(ReseedRefused):
            reseed(state, min_pool_entropy=128)

    @pytest.mark.parametrize(
        "C_p, expected",
        [(1, [0]), (2, [0, 1]), (3, [0]), (4, [0, 1, 2]), (8, [0, 1, 2, 3])],
    )
    def test_counter_should_select_dividing_pools(self, C_p, expected):
        assert pools_for_reseed(C_p, 12) == expected

    def test_first_reseed_should_drain_only_pool_zero(self):
        # Arrange
        transcript = Transcript()
        state = new_state()
        for source in range(12):
            state = pool_feed(state, source, b"e", 128)

        # Act
        state = reseed(state, transcript=transcript)

        # Assert
        assert state.C_p == 1
        assert transcript.lines[-1] == "RESEED 1 0"
        assert state.pool_fill_bits[0] == 0
        assert state.pool_fill_bits[1] == 128

    def test_schedule_over_1024_reseeds_should_follow_divisibility(self):
        # Arrange
        transcript = Transcript()
        state = new_state(12)

        # Act
        for r in range(1024):
            for source in range(12):
                state = pool_feed(state, source, r.to_bytes(4, "big"), 128)
            state = reseed(state, transcript=transcript)

        # Assert
        reseeds = [line.split() for line in transcript.lines if line.startswith("RESEED")]
        assert len(reseeds) == 1024
        for counter, pools in reseeds:
            r = int(counter)
            included = {int(i) for i in pools.split(",")}
            assert included == {i for i in range(12) if r % (1 << i) == 0}


class TestGenerate:
    def test_unseeded_generator_should_refuse(self):
        with pytest.raises(NotSeededError):
            generate(new_state(), 128)

    def test_128_bit_seed_should_use_one_block(self):
        state = _seeded_state()

        output, _ = generate(state, 128)

        expected = aes256_encrypt_block(state.R, (0).to_bytes(8, "big") + (1).to_bytes(8, "big"))
        assert bitops.to_bytes(output.R_s) == expected
        assert output.R_p.size == 128

    def test_seed_length_should_be_truncated(self):
        output, _ = generate(_seeded_state(), 200)

        assert output.R_s.size == 200

    def test_consecutive_calls_should_roll_forward(self):
        state = _seeded_state()

        first, state = generate(state, 256)
        second, _ = generate(state, 256)

        assert not np.array_equal(first.R_s, second.R_s)

    def test_aes_should_match_published_vector(self):
        key = bytes(range(32))
        plaintext = bytes.fromhex("00112233445566778899aabbccddeeff")

        assert aes256_encrypt_block(key, plaintext).hex() == "8ea2b7ca516745bfeafc49904b496089"

    def test_retained_state_should_not_reveal_past_output(self):
        # Arrange
        state = _seeded_state()
        old_R = state.R

        # Act
        output, state = generate(state, 256)

        # Assert
        emitted = bitops.to_bytes(output.R_s)
        blocks = [emitted[i:i + 16] for i in range(0, len(emitted), 16)]
        retained = state.R + b"".join(state.pools)
        assert state.R != old_R
        assert all(block not in retained for block in blocks)
        regenerated, _ = generate(state, 256)
        assert not np.array_equal(regenerated.R_s, output.R_s)


class TestNextSeedPair:
    def test_starved_and_unseeded_should_raise(self):
        with pytest.raises(ReseedRefused):
            next_seed_pair(new_state(), 256)

    def test_fed_generator_should_produce_seed_pair(self):
        state = pool_feed(new_state(), 0, b"shared key", 128)

        output, state = next_seed_pair(state, 256)

        assert output.R_s.size == 256
        assert output.R_p.size == 128
        assert state.C_p == 1

    def test_seeded_generator_should_keep_generating_when_starved(self):
        state = pool_feed(new_state(), 0, b"shared key", 128)
        _, state = next_seed_pair(state, 256)

        output, state = next_seed_pair(state, 256)

        assert state.C_p == 1
        assert output.R_s.size == 256

    def test_identical_transcripts_should_give_identical_outputs(self):
        def run():
            generator = SeedGenerator(min_pool_entropy=16, keep_transcript=True)
            outputs = []
            for round_ in range(5):
                generator.feed_key(bitops.from_int(round_ + 1, 16), source_id=0, entropy_bits=16)
                outputs.append(bitops.to_hex(generator.next_seed_pair(256).R_s))
            return outputs, generator.transcript.text()

        assert run() == run()


class TestSingleSourceSurvival:
    def test_outputs_should_pass_randomness_tests(self):
        # Arrange: every pool but pool 0 holds attacker-known constants
        generator = SeedGenerator(min_pool_entropy=64)
        rng = np.random.default_rng(2024)
        chunks = []

        # Act
        while sum(c.size for c in chunks) < 100_000:
            for source in range(1, 12):
                generator.feed(source, b"known-constant", 0)
            generator.feed(0, rng.bytes(8), 64)
            chunks.append(generator.next_seed_pair(1024).R_s)
        stream_bits = np.concatenate(chunks)[:100_000]

        # Assert
        assert monobit_test(stream_bits) > 0.01
        assert runs_test(stream_bits) > 0.01
