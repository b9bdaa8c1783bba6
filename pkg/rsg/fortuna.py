"""
Fortuna-style random seed generation.

Events are routed round-robin to pools by source_id. Reseed r (counter
incremented first) drains every pool P_i with 2^i | r and folds their
double-SHA-256 digests into R. Output blocks are AES-256 encryptions of
128-bit counter blocks laid out as purpose (64 bits) || index (64 bits),
with purpose 0 for R_s, 1 for R_p and 2 for the next R.
"""
import hashlib
import logging
from typing import List, Optional, Tuple

from cryptography.hazmat.primitives.ciphers import Cipher, algorithms, modes

from core import bits as bitops
from core.config import settings
from core.exceptions import NotSeededError, ReseedRefused, ValidationError
from schemas.rsg import GeneratorState, SeedOutput

logger = logging.getLogger(__name__)

EMPTY_POOL = hashlib.sha256(b"").digest()

PURPOSE_SEED = 0
PURPOSE_POLY = 1
PURPOSE_REKEY = 2


class Transcript:
    """
    Line-oriented audit log: FEED pool sha256(event), RESEED C_p pools, GEN s_l.
    """

    def __init__(self):
        self.lines: List[str] = []

    def feed(self, pool: int, event: bytes) -> None:
        self.lines.append(f"FEED {pool} {hashlib.sha256(event).hexdigest()}")

    def reseed(self, C_p: int, pools: List[int]) -> None:
        self.lines.append(f"RESEED {C_p} {','.join(str(i) for i in pools)}")

    def gen(self, s_l: int) -> None:
        self.lines.append(f"GEN {s_l}")

    def text(self) -> str:
        return "\n".join(self.lines) + ("\n" if self.lines else "")


def sha256d(data: bytes) -> bytes:
    return hashlib.sha256(hashlib.sha256(data).digest()).digest()


def aes256_encrypt_block(key: bytes, block: bytes) -> bytes:
    encryptor = Cipher(algorithms.AES(key), modes.ECB()).encryptor()
    return encryptor.update(block) + encryptor.finalize()


def counter_block(purpose: int, index: int) -> bytes:
    return purpose.to_bytes(8, "big") + index.to_bytes(8, "big")


def new_state(num_pools: int = settings.NUM_POOLS) -> GeneratorState:
    return GeneratorState(
        pools=[EMPTY_POOL] * num_pools,
        C_p=0,
        R=bytes(32),
        pool_fill_bits=[0] * num_pools,
    )


def pool_index(state: GeneratorState, source_id: int) -> int:
    return source_id % state.num_pools


def pools_for_reseed(C_p: int, num_pools: int) -> List[int]:
    return [i for i in range(num_pools) if C_p % (1 << i) == 0]


def pool_feed(
    state: GeneratorState,
    source_id: int,
    event: bytes,
    entropy_bits: int = 0,
    transcript: Optional[Transcript] = None,
) -> GeneratorState:
    if not event:
        raise ValidationError("entropy event must not be empty")
    if entropy_bits < 0:
        raise ValidationError("declared entropy must be nonnegative")
    i = pool_index(state, source_id)
    pools = list(state.pools)
    fill = list(state.pool_fill_bits)
    pools[i] = hashlib.sha256(pools[i] + event).digest()
    fill[i] += entropy_bits
    if transcript is not None:
        transcript.feed(i, event)
    return state.model_copy(update={"pools": pools, "pool_fill_bits": fill})


def reseed(
    state: GeneratorState,
    min_pool_entropy: int = settings.MIN_POOL_ENTROPY_BITS,
    transcript: Optional[Transcript] = None,
) -> GeneratorState:
    if state.pool_fill_bits[0] < min_pool_entropy:
        raise ReseedRefused(
            f"pool 0 holds {state.pool_fill_bits[0]} declared bits, {min_pool_entropy} required"
        )
    C_p = state.C_p + 1
    included = pools_for_reseed(C_p, state.num_pools)
    pools = list(state.pools)
    fill = list(state.pool_fill_bits)
    h = b""
    for i in included:
        h += sha256d(pools[i])
        pools[i] = EMPTY_POOL
        fill[i] = 0
    R = sha256d(state.R + h)
    if transcript is not None:
        transcript.reseed(C_p, included)
    logger.debug(f"Reseed {C_p} drained pools {included}")
    return state.model_copy(update={"pools": pools, "pool_fill_bits": fill, "C_p": C_p, "R": R})


def generate(
    state: GeneratorState,
    s_l: int = settings.SEED_LENGTH_BITS,
    transcript: Optional[Transcript] = None,
) -> Tuple[SeedOutput, GeneratorState]:
    """
    Emit R_s (s_l bits) and R_p (128 bits), then roll R forward.
    """
    if not state.seeded:
        raise NotSeededError()
    if s_l < 1:
        raise ValidationError("seed length must be positive")

    encryptor = Cipher(algorithms.AES(state.R), modes.ECB()).encryptor()
    num_blocks = -(-s_l // 128)
    seed_bytes = b"".join(encryptor.update(counter_block(PURPOSE_SEED, j)) for j in range(1, num_blocks + 1))
    poly_bytes = encryptor.update(counter_block(PURPOSE_POLY, 1))
    next_R = encryptor.update(counter_block(PURPOSE_REKEY, 1)) + encryptor.update(counter_block(PURPOSE_REKEY, 2))
    encryptor.finalize()

    if transcript is not None:
        transcript.gen(s_l)
    output = SeedOutput(R_s=bitops.from_bytes(seed_bytes, s_l), R_p=bitops.from_bytes(poly_bytes))
    return output, state.model_copy(update={"R": next_R})


def next_seed_pair(
    state: GeneratorState,
    s_l: int = settings.SEED_LENGTH_BITS,
    min_pool_entropy: int = settings.MIN_POOL_ENTROPY_BITS,
    transcript: Optional[Transcript] = None,
) -> Tuple[SeedOutput, GeneratorState]:
    """
    Reseed when pool 0 has accumulated enough entropy, then generate.
    """
    if state.pool_fill_bits[0] >= min_pool_entropy:
        state = reseed(state, min_pool_entropy, transcript)
    elif not state.seeded:
        raise ReseedRefused("pool 0 is starved and the generator was never seeded")
    return generate(state, s_l, transcript)


class SeedGenerator:
    """
    Single-owner wrapper holding one node's GeneratorState and transcript.
    """

    def __init__(
        self,
        num_pools: int = settings.NUM_POOLS,
        min_pool_entropy: int = settings.MIN_POOL_ENTROPY_BITS,
        keep_transcript: bool = False,
    ):
        self.state = new_state(num_pools)
        self.min_pool_entropy = min_pool_entropy
        self.transcript = Transcript() if keep_transcript else None

    def feed(self, source_id: int, event: bytes, entropy_bits: int = 0) -> None:
        self.state = pool_feed(self.state, source_id, event, entropy_bits, self.transcript)

    def feed_key(self, key_bits, source_id: int, entropy_bits: int) -> None:
        """
        Feed a shared key from one subcarrier source as a single pool event.
        """
        self.feed(source_id, bitops.to_bytes(key_bits) + len(key_bits).to_bytes(4, "big"), entropy_bits)

    def reseed(self) -> None:
        self.state = reseed(self.state, self.min_pool_entropy, self.transcript)

    def next_seed_pair(self, s_l: int = settings.SEED_LENGTH_BITS) -> SeedOutput:
        output, self.state = next_seed_pair(self.state, s_l, self.min_pool_entropy, self.transcript)
        return output
