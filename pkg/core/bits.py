"""
BitString helpers.

A BitString is a 1-D numpy uint8 array holding 0/1 values, most significant
bit first. Hex encodings are lowercase and left-pad to a whole number of
nibbles.
"""
from typing import Iterable, Union

import numpy as np

from core.exceptions import ValidationError

BitLike = Union[np.ndarray, Iterable[int], str]


def as_bits(value: BitLike) -> np.ndarray:
    """
    Coerce a 0/1 sequence or a "0101" string into a BitString.
    """
    if isinstance(value, str):
        if any(ch not in "01" for ch in value):
            raise ValidationError(f"not a bit string: {value!r}")
        return np.frombuffer(value.encode("ascii"), dtype=np.uint8) - ord("0")
    bits = np.asarray(value, dtype=np.uint8).ravel()
    if bits.size and bits.max() > 1:
        raise ValidationError("bit values must be 0 or 1")
    return bits


def to_str(bits: np.ndarray) -> str:
    return "".join("1" if b else "0" for b in bits)


def from_bytes(data: bytes, length: int = None) -> np.ndarray:
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8))
    return bits if length is None else bits[:length]


def to_bytes(bits: np.ndarray) -> bytes:
    """
    Pack bits MSB first; a trailing partial byte is zero-padded on the right.
    """
    return np.packbits(as_bits(bits)).tobytes()


def to_hex(bits: np.ndarray) -> str:
    bits = as_bits(bits)
    if bits.size == 0:
        return ""
    pad = (-bits.size) % 4
    padded = np.concatenate([np.zeros(pad, dtype=np.uint8), bits])
    value = to_int(padded)
    return format(value, "x").zfill(padded.size // 4)


def from_hex(text: str, length: int) -> np.ndarray:
    value = int(text, 16) if text else 0
    return from_int(value, length)


def to_int(bits: np.ndarray) -> int:
    """
    Interpret bits as an unsigned big-endian integer.
    """
    value = 0
    for b in as_bits(bits):
        value = (value << 1) | int(b)
    return value


def from_int(value: int, length: int) -> np.ndarray:
    if value < 0 or value >= (1 << length):
        raise ValidationError(f"value {value} does not fit in {length} bits")
    return np.array([(value >> (length - 1 - i)) & 1 for i in range(length)], dtype=np.uint8)


def xor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a, b = as_bits(a), as_bits(b)
    if a.size != b.size:
        raise ValidationError(f"length mismatch: {a.size} != {b.size}")
    return np.bitwise_xor(a, b)


def hamming(a: np.ndarray, b: np.ndarray) -> int:
    return int(np.count_nonzero(xor(a, b)))


def random_bits(length: int, rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, 2, size=length, dtype=np.uint8)
