"""
Binary BCH codec over GF(2^m) backed by galois.

Codeword vectors are ordered highest-degree coefficient first, the convention
galois uses; encoding is systematic with the message in the first k positions.
"""
import logging
from functools import lru_cache
from pathlib import Path
from typing import Iterable, List, Tuple, Union

import galois
import numpy as np

from coding.primitive_polys import primitive_poly_for
from core import bits as bitops
from core.exceptions import OutputError, ParameterError, ValidationError
from schemas.coding import BchParams, DecodeResult

logger = logging.getLogger(__name__)

GF2 = galois.GF(2)


class BchCodec:
    """
    Bounded-distance BCH encoder/decoder for one (n, k, t) triple.

    Stateless after construction; share one instance per parameter set via
    get_codec().
    """

    def __init__(self, params: BchParams):
        self.params = params
        field = galois.GF(2 ** params.m, irreducible_poly=primitive_poly_for(params.m))
        try:
            self._code = galois.BCH(params.n, params.k, extension_field=field)
        except ValueError as e:
            raise ParameterError(f"unsupported BCH parameters ({params.n}, {params.k}): {e}")
        if self._code.t != params.t:
            raise ParameterError(
                f"BCH({params.n}, {params.k}) corrects t={self._code.t}, not t={params.t}"
            )
        self.field = field
        self.alpha = field.primitive_element
        self._roots = self.alpha ** np.arange(1, 2 * params.t + 1)
        logger.debug(f"Built BCH({params.n}, {params.k}, t={params.t}) over GF(2^{params.m})")

    @property
    def generator_poly(self) -> galois.Poly:
        return self._code.generator_poly

    def encode(self, message: np.ndarray) -> np.ndarray:
        message = bitops.as_bits(message)
        if message.size != self.params.k:
            raise ValidationError(f"message length {message.size} != k={self.params.k}")
        codeword = self._code.encode(GF2(message))
        return np.asarray(codeword, dtype=np.uint8)

    def decode(self, received: np.ndarray) -> DecodeResult:
        received = bitops.as_bits(received)
        if received.size != self.params.n:
            raise ValidationError(f"received length {received.size} != n={self.params.n}")
        corrected, num_errors = self._code.decode(GF2(received), output="codeword", errors=True)
        num_errors = int(num_errors)
        if num_errors < 0:
            return DecodeResult(success=False)
        corrected = np.asarray(corrected, dtype=np.uint8)
        return DecodeResult(success=True, codeword=corrected, corrections=bitops.hamming(corrected, received))

    def syndrome(self, word: np.ndarray) -> np.ndarray:
        """
        The 2t syndrome components r(alpha^j), j = 1..2t, as integers of GF(2^m).
        """
        word = bitops.as_bits(word)
        if word.size != self.params.n:
            raise ValidationError(f"word length {word.size} != n={self.params.n}")
        poly = galois.Poly(self.field(word.astype(np.int64)))
        return np.asarray(poly(self._roots), dtype=np.int64)

    def is_codeword(self, word: np.ndarray) -> bool:
        return not np.any(self.syndrome(word))

    def divisible_by_generator(self, word: np.ndarray) -> bool:
        remainder = galois.Poly(GF2(bitops.as_bits(word))) % self.generator_poly
        return np.count_nonzero(remainder.coeffs) == 0

    def random_codeword(self, rng: np.random.Generator) -> np.ndarray:
        return self.encode(bitops.random_bits(self.params.k, rng))


@lru_cache(maxsize=32)
def _cached_codec(n: int, k: int, t: int) -> BchCodec:
    return BchCodec(BchParams(n=n, k=k, t=t))


def get_codec(params: BchParams) -> BchCodec:
    return _cached_codec(params.n, params.k, params.t)


def encode(message: np.ndarray, p: BchParams) -> np.ndarray:
    return get_codec(p).encode(message)


def decode(received: np.ndarray, p: BchParams) -> DecodeResult:
    return get_codec(p).decode(received)


def random_codeword(p: BchParams, rng: np.random.Generator) -> np.ndarray:
    return get_codec(p).random_codeword(rng)


def syndrome(word: np.ndarray, p: BchParams) -> np.ndarray:
    return get_codec(p).syndrome(word)


def is_codeword(word: np.ndarray, p: BchParams) -> bool:
    return get_codec(p).is_codeword(word)


# Conformance vectors: one "n k t message_hex codeword_hex" record per line

def format_vector(p: BchParams, message: np.ndarray, codeword: np.ndarray) -> str:
    return f"{p.n} {p.k} {p.t} {bitops.to_hex(message)} {bitops.to_hex(codeword)}"


def write_conformance_vectors(
    path: Union[str, Path],
    p: BchParams,
    messages: Iterable[np.ndarray],
) -> int:
    lines = [format_vector(p, m, encode(m, p)) for m in messages]
    try:
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as e:
        raise OutputError(f"cannot write conformance vectors: {e}", path=str(path))
    logger.info(f"Wrote {len(lines)} conformance vectors to {path}")
    return len(lines)


def read_conformance_vectors(path: Union[str, Path]) -> List[Tuple[BchParams, np.ndarray, np.ndarray]]:
    vectors = []
    for line_no, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 5:
            raise ValidationError(f"line {line_no}: expected 5 fields, got {len(fields)}")
        n, k, t = (int(x) for x in fields[:3])
        p = BchParams(n=n, k=k, t=t)
        vectors.append((p, bitops.from_hex(fields[3], k), bitops.from_hex(fields[4], n)))
    return vectors


def check_conformance_vectors(path: Union[str, Path]) -> List[int]:
    """
    Re-encode every vector in the file; returns the line indices that disagree.
    """
    mismatches = []
    for index, (p, message, codeword) in enumerate(read_conformance_vectors(path)):
        if not np.array_equal(encode(message, p), codeword):
            mismatches.append(index)
    return mismatches
