"""
Code-offset secure sketch on top of the BCH codec.

The public message is Q(H_ab) xor C for a random codeword C, together with
SHA-256 of Q(H_ab) so the peer can confirm its reconstruction.
"""
import hashlib
import logging
from typing import Tuple

import numpy as np

from coding import bch
from core import bits as bitops
from core.exceptions import ReconciliationError, ValidationError
from schemas.coding import BchParams
from schemas.extractor import SecureSketchMsg, SketchRecovery
from schemas.response import ErrorCodes

logger = logging.getLogger(__name__)


def digest(bits: np.ndarray) -> bytes:
    """
    SHA-256 over the MSB-first packed bits.
    """
    return hashlib.sha256(bitops.to_bytes(bits)).digest()


def sketch_generate(
    bits_a: np.ndarray,
    p: BchParams,
    rng: np.random.Generator,
) -> Tuple[SecureSketchMsg, np.ndarray]:
    bits_a = bitops.as_bits(bits_a)
    if bits_a.size != p.n:
        raise ValidationError(f"sketch input length {bits_a.size} != n={p.n}")
    codeword = bch.random_codeword(p, rng)
    msg = SecureSketchMsg(sketch=bitops.xor(bits_a, codeword), verify_hash=digest(bits_a), params=p)
    return msg, codeword


def sketch_recover(bits_b: np.ndarray, msg: SecureSketchMsg) -> SketchRecovery:
    bits_b = bitops.as_bits(bits_b)
    if bits_b.size != msg.params.n:
        raise ValidationError(f"recovery input length {bits_b.size} != n={msg.params.n}")

    noisy_codeword = bitops.xor(bits_b, msg.sketch)
    result = bch.decode(noisy_codeword, msg.params)
    if not result.success:
        raise ReconciliationError("BCH decoding failed", error_code=ErrorCodes.DECODE_FAILURE)

    candidate = bitops.xor(msg.sketch, result.codeword)
    if digest(candidate) != msg.verify_hash:
        raise ReconciliationError("recovered string does not match the published hash", error_code=ErrorCodes.HASH_MISMATCH)
    return SketchRecovery(bits=candidate, corrections=result.corrections)


def serialize_sketch(msg: SecureSketchMsg) -> str:
    p = msg.params
    return f"{p.n} {p.k} {p.t} {bitops.to_hex(msg.sketch)} {msg.verify_hash.hex()}"


def parse_sketch(line: str) -> SecureSketchMsg:
    fields = line.split()
    if len(fields) != 5:
        raise ValidationError(f"sketch record needs 5 fields, got {len(fields)}")
    n, k, t = (int(x) for x in fields[:3])
    p = BchParams(n=n, k=k, t=t)
    return SecureSketchMsg(
        sketch=bitops.from_hex(fields[3], n),
        verify_hash=bytes.fromhex(fields[4]),
        params=p,
    )
