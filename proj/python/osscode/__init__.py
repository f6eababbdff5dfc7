"""Sparse superposition block codes on the real-input Gaussian channel.

The heavy lifting lives in the compiled extension; this package re-exports
its surface: spec construction, encode/decode, the reproducible channel,
Monte Carlo sweeps, and the analytic error-rate curves.
"""

from ._core import (
    Error,
    Spec,
    achievability_bound,
    awgn_capacity,
    bits_to_hex,
    bler_single_layer_exact,
    bler_two_layer_bound,
    compare_report,
    decode,
    effective_coding_gain,
    encode,
    hex_to_bits,
    log_q,
    make_spec,
    marcum_q_half,
    min_distance_exhaustive,
    normal_approx_rate,
    q_func,
    q_func_inv,
    random_bits,
    run_sweep,
    sigma_from_ebn0_db,
    spec_from_json,
    transmit,
    wilson_interval,
)

__all__ = [
    "Error",
    "Spec",
    "achievability_bound",
    "awgn_capacity",
    "bits_to_hex",
    "bler_single_layer_exact",
    "bler_two_layer_bound",
    "compare_report",
    "decode",
    "effective_coding_gain",
    "encode",
    "hex_to_bits",
    "log_q",
    "make_spec",
    "marcum_q_half",
    "min_distance_exhaustive",
    "normal_approx_rate",
    "q_func",
    "q_func_inv",
    "random_bits",
    "run_sweep",
    "sigma_from_ebn0_db",
    "spec_from_json",
    "transmit",
    "wilson_interval",
]

__version__ = "0.1.0"
