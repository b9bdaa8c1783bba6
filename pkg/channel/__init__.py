from channel.sim import (
    sample_channel,
    sample_channel_matrix,
    probe_pair,
    coherence_time,
    schedule_valid,
    probing_rate,
)

__all__ = [
    "sample_channel",
    "sample_channel_matrix",
    "probe_pair",
    "coherence_time",
    "schedule_valid",
    "probing_rate",
]
