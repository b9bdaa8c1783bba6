from adversary.jammer import (
    RacsJammer,
    ReplayBuffer,
    broadband_waveform,
    effective_interference,
    interference_power_factor,
    mai_phi_monte_carlo,
    peak_power,
    racs_code_counts,
    racs_code_set,
    racs_seed_counts,
    racs_waveform,
    replay_waveform,
)
