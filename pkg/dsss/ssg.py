"""
Spreading sequence generation: R_p picks the polynomial, R_s seeds the LFSR.
"""
import numpy as np

from core import bits as bitops
from core.config import settings
from dsss.bank import select_polynomial
from dsss.lfsr import lfsr_generate
from schemas.dsss import PolyEntry, PrimitivePolyBank, SpreadingCode


def seed_from_bits(bits: np.ndarray, degree: int) -> np.ndarray:
    """
    First `degree` bits of R_s as the LFSR seed. Shorter inputs keep their
    integer value (zero-padded on the left); the all-zero seed becomes 1.
    """
    bits = bitops.as_bits(bits)
    if bits.size >= degree:
        seed = bits[:degree].copy()
    else:
        seed = np.concatenate([np.zeros(degree - bits.size, dtype=np.uint8), bits])
    if not seed.any():
        seed[-1] = 1
    return seed


def seed_value(key_value: int, key_bits: int, degree: int) -> int:
    """
    Integer form of seed_from_bits(from_int(key_value, key_bits), degree).
    """
    seed = key_value >> (key_bits - degree) if key_bits > degree else key_value
    return seed or 1


def code_length(entry: PolyEntry, L: int, exact: bool) -> int:
    return entry.period if exact else L


def code_from_seed_value(entry: PolyEntry, value: int, key_bits: int, L: int, exact: bool = False) -> SpreadingCode:
    """
    Code produced when the leading key_bits of R_s encode `value`.
    """
    seed = seed_from_bits(bitops.from_int(value, key_bits), entry.degree)
    return lfsr_generate(entry, seed, code_length(entry, L, exact))


def ssg_code(
    R_s: np.ndarray,
    R_p: np.ndarray,
    bank: PrimitivePolyBank,
    L: int = settings.SPREADING_LENGTH,
    exact: bool = settings.EXACT_MSEQ_LENGTH,
    seed_bits: int = None,
) -> SpreadingCode:
    """
    Build the legitimate spreading code. seed_bits limits how many leading
    bits of R_s form the seed; an L longer than the m-sequence period wraps
    the sequence cyclically (L = 1024 on degree 10 appends the first chip).
    """
    entry = select_polynomial(R_p, bank)
    source = bitops.as_bits(R_s)
    if seed_bits is not None:
        source = source[:seed_bits]
    seed = seed_from_bits(source, entry.degree)
    return lfsr_generate(entry, seed, code_length(entry, L, exact))
