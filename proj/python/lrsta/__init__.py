"""Pulse synthesis for three-level systems beyond the rotating-wave approximation."""

from ._core import (  # noqa: F401
    ArgumentError,
    AuxParams,
    ConvergenceError,
    Error,
    IoError,
    PropagationError,
    Schedule,
    SynthesisError,
    calibrate_strategy_c,
    delta_epsilon_per_period,
    invariant,
    invariant_eigenvectors,
    load_schedule,
    propagate,
    solve_omega_T_for_A,
    solve_omega_T_for_B,
    strategy_a,
    strategy_b,
    strategy_c,
    verify,
)

__version__ = "0.1.0"
