from coding.bch import (
    BchCodec,
    get_codec,
    encode,
    decode,
    random_codeword,
    syndrome,
    is_codeword,
)

__all__ = [
    "BchCodec",
    "get_codec",
    "encode",
    "decode",
    "random_codeword",
    "syndrome",
    "is_codeword",
]
