"""
Channel trace CSV: one row per (slot, subcarrier, role) with columns
slot, subcarrier, re, im, role.
"""
import csv
import logging
from collections import defaultdict
from pathlib import Path
from typing import Dict, Iterable, Union

import numpy as np

from core.exceptions import OutputError, ValidationError
from schemas.channel import ChannelObservation, ObservationRole

logger = logging.getLogger(__name__)

TRACE_COLUMNS = ["slot", "subcarrier", "re", "im", "role"]


def write_trace(path: Union[str, Path], observations: Iterable[ChannelObservation]) -> int:
    rows = 0
    try:
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(TRACE_COLUMNS)
            for obs in observations:
                for slot, subcarrier in np.ndindex(obs.values.shape):
                    value = obs.values[slot, subcarrier]
                    writer.writerow([
                        slot,
                        subcarrier,
                        format(value.real, ".17g"),
                        format(value.imag, ".17g"),
                        obs.role.value,
                    ])
                    rows += 1
    except OSError as e:
        raise OutputError(f"cannot write channel trace: {e}", path=str(path))
    logger.info(f"Wrote {rows} trace rows to {path}")
    return rows


def read_trace(path: Union[str, Path]) -> Dict[ObservationRole, ChannelObservation]:
    entries = defaultdict(dict)
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames != TRACE_COLUMNS:
            raise ValidationError(f"trace header must be {','.join(TRACE_COLUMNS)}")
        for line_no, row in enumerate(reader, start=2):
            try:
                role = ObservationRole(row["role"])
                key = (int(row["slot"]), int(row["subcarrier"]))
                entries[role][key] = complex(float(row["re"]), float(row["im"]))
            except ValueError as e:
                raise ValidationError(f"trace line {line_no}: {e}")

    observations = {}
    for role, cells in entries.items():
        num_slots = max(s for s, _ in cells) + 1
        num_subcarriers = max(k for _, k in cells) + 1
        if len(cells) != num_slots * num_subcarriers:
            raise ValidationError(f"trace for {role.value} is not a full slot x subcarrier grid")
        values = np.empty((num_slots, num_subcarriers), dtype=np.complex128)
        for (slot, subcarrier), value in cells.items():
            values[slot, subcarrier] = value
        observations[role] = ChannelObservation(values=values, role=role)
    return observations
