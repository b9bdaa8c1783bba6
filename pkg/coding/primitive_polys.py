"""
Primitive polynomials used to build GF(2^m) for the BCH codec.

Each entry is the full polynomial as an integer, bit i holding the coefficient
of x^i. The table is fixed so codewords are bit-exact across implementations;
every entry is the conventional textbook choice for its degree.

    m   polynomial                      int
    3   x^3 + x + 1                     0xB
    4   x^4 + x + 1                     0x13
    5   x^5 + x^2 + 1                   0x25
    6   x^6 + x + 1                     0x43
    7   x^7 + x^3 + 1                   0x89
    8   x^8 + x^4 + x^3 + x^2 + 1       0x11D
    9   x^9 + x^4 + 1                   0x211
    10  x^10 + x^3 + 1                  0x409
    11  x^11 + x^2 + 1                  0x805
    12  x^12 + x^6 + x^4 + x + 1        0x1053
    13  x^13 + x^4 + x^3 + x + 1        0x201B
    14  x^14 + x^10 + x^6 + x + 1       0x4443
    15  x^15 + x + 1                    0x8003
    16  x^16 + x^12 + x^3 + x + 1       0x1100B
"""
from typing import Dict

from core.exceptions import ParameterError

PRIMITIVE_POLYS: Dict[int, int] = {
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x89,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x4443,
    15: 0x8003,
    16: 0x1100B,
}


def primitive_poly_for(m: int) -> int:
    try:
        return PRIMITIVE_POLYS[m]
    except KeyError:
        raise ParameterError(f"no primitive polynomial shipped for GF(2^{m})")
