"""
Primitive polynomial banks.

Bank files hold one "degree tap_mask_hex" record per line ('#' starts a
comment). Every entry is verified maximal-length when loaded: by measuring
the LFSR period for degree <= 16, by a galois primitivity test above that.
"""
import logging
from functools import lru_cache
from pathlib import Path
from typing import Dict, Iterable, List, Tuple, Union

import galois
import numpy as np

from core import bits as bitops
from core.config import settings
from core.exceptions import ConfigurationError, OutputError
from dsss.lfsr import measure_period
from schemas.dsss import PolyEntry, PrimitivePolyBank

logger = logging.getLogger(__name__)

MAX_MEASURED_DEGREE = 16


def is_maximal_length(entry: PolyEntry) -> bool:
    if entry.degree <= MAX_MEASURED_DEGREE:
        return measure_period(entry) == entry.period
    return galois.is_primitive(galois.Poly.Int(entry.poly_int))


def expected_count(degree: int) -> int:
    """
    Number of primitive polynomials of a degree: phi(2^n - 1) / n.
    """
    return int(galois.euler_phi((1 << degree) - 1)) // degree


def generate_bank(degrees: Iterable[int]) -> PrimitivePolyBank:
    entries = []
    for degree in sorted(set(degrees)):
        found = [
            PolyEntry(degree=degree, tap_mask=int(poly) - (1 << degree))
            for poly in galois.primitive_polys(2, degree)
        ]
        if len(found) != expected_count(degree):
            raise ConfigurationError(
                f"found {len(found)} primitive polynomials of degree {degree}, expected {expected_count(degree)}"
            )
        entries.extend(sorted(found, key=lambda e: e.tap_mask))
    return PrimitivePolyBank(entries=entries)


@lru_cache(maxsize=8)
def _default_bank(degrees: Tuple[int, ...]) -> PrimitivePolyBank:
    bank = generate_bank(degrees)
    logger.info(f"Generated polynomial bank with {len(bank)} entries for degrees {list(degrees)}")
    return bank


def default_bank(degrees: Iterable[int] = None) -> PrimitivePolyBank:
    return _default_bank(tuple(sorted(set(degrees or settings.BANK_DEGREES))))


def parse_bank(text: str, verify: bool = True) -> PrimitivePolyBank:
    entries = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ConfigurationError("bank record must be 'degree tap_mask_hex'", line=line_no)
        try:
            entry = PolyEntry(degree=int(fields[0]), tap_mask=int(fields[1], 16))
        except ValueError as e:
            raise ConfigurationError(f"invalid bank record: {e}", line=line_no)
        if verify and not is_maximal_length(entry):
            raise ConfigurationError(f"polynomial {entry.label} is not primitive", line=line_no)
        entries.append(entry)
    if not entries:
        raise ConfigurationError("polynomial bank is empty")
    return PrimitivePolyBank(entries=entries)


def load_bank(path: Union[str, Path], verify: bool = True) -> PrimitivePolyBank:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigurationError(f"cannot read polynomial bank {path}: {e}")
    bank = parse_bank(text, verify)
    logger.info(f"Loaded {len(bank)} polynomials from {path}")
    return bank


def save_bank(path: Union[str, Path], bank: PrimitivePolyBank) -> None:
    lines = ["# degree tap_mask_hex"] + [f"{e.degree} {e.tap_mask:x}" for e in bank.entries]
    try:
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as e:
        raise OutputError(f"cannot write polynomial bank: {e}", path=str(path))


def check_bank(path: Union[str, Path]) -> Dict[str, object]:
    """
    Validate a bank file record by record and summarize coverage per degree.
    """
    bank = load_bank(path, verify=False)
    failures: List[str] = [e.label for e in bank.entries if not is_maximal_length(e)]
    degrees = sorted({e.degree for e in bank.entries})
    coverage = {
        d: {"entries": len(bank.of_degree(d)), "expected": expected_count(d)}
        for d in degrees
    }
    duplicates = len(bank.entries) - len(set(bank.entries))
    return {
        "path": str(path),
        "entries": len(bank),
        "failures": failures,
        "duplicates": duplicates,
        "coverage": coverage,
        "valid": not failures and not duplicates,
    }


def select_polynomial(R_p: np.ndarray, bank: PrimitivePolyBank) -> PolyEntry:
    if len(bank) == 0:
        raise ConfigurationError("polynomial bank is empty")
    return bank.entries[bitops.to_int(R_p) % len(bank)]
