"""
Offline key extraction from a recorded channel trace.

Each probing slot of the trace is one extraction round; keys that Alice and
Bob agree on are decorrelated across adjacent rounds and written as lowercase
hex, one key per line.
"""
import logging
from pathlib import Path
from typing import List, Union

import numpy as np

from channel.trace import read_trace
from core import bits as bitops
from core.config import settings
from core.exceptions import OutputError, ValidationError
from core.rng import stream
from extractor.pipeline import extract_shared_key, subcarrier_decorrelate
from schemas.channel import ObservationRole
from schemas.coding import BchParams
from schemas.extractor import QuantizerConfig

logger = logging.getLogger(__name__)


def replay_trace(
    trace_path: Union[str, Path],
    cfg: QuantizerConfig,
    p: BchParams,
    key_len: int,
    master_seed: int,
    threshold: float = settings.DECORRELATION_THRESHOLD,
) -> List[np.ndarray]:
    observations = read_trace(trace_path)
    if ObservationRole.ALICE not in observations or ObservationRole.BOB not in observations:
        raise ValidationError("trace needs both alice_view and bob_view rows")
    H_ab = observations[ObservationRole.ALICE].values
    H_ba = observations[ObservationRole.BOB].values
    if H_ab.shape != H_ba.shape:
        raise ValidationError("alice_view and bob_view grids differ in shape")

    keys = []
    failures = 0
    for slot in range(H_ab.shape[0]):
        rng = stream(master_seed, "trace-replay", slot)
        result = extract_shared_key(H_ab[slot], H_ba[slot], cfg, p, key_len, rng)
        if result.agreed:
            keys.append(result.key_alice.bits)
        else:
            failures += 1

    kept = subcarrier_decorrelate(keys, threshold) if keys else []
    logger.info(f"Trace replay: {len(kept)} keys kept, {failures} rounds failed reconciliation")
    return kept


def write_keys(path: Union[str, Path], keys: List[np.ndarray]) -> None:
    try:
        Path(path).write_text("".join(bitops.to_hex(k) + "\n" for k in keys), encoding="utf-8")
    except OSError as e:
        raise OutputError(f"cannot write keys: {e}", path=str(path))
