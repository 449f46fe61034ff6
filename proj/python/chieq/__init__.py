"""Linear IEQ time steppers for the variable-mobility Cahn-Hilliard equation."""

from ._chieq import (
    ConfigError,
    DimensionError,
    DomainError,
    Error,
    NoConvergence,
    PhysParams,
    ShiftTooSmall,
    StepFailure,
    converge,
    energy_original,
    free_energy,
    free_energy_deriv,
    h_factor,
    ieq_variable,
    init_random,
    init_sinusoidal,
    laplacian,
    mobility,
    normalize_config,
    preset_config,
    preset_names,
    read_snapshot,
    run,
    validate_shift,
    variable_laplacian,
    verify,
)

__all__ = [
    "ConfigError",
    "DimensionError",
    "DomainError",
    "Error",
    "NoConvergence",
    "PhysParams",
    "ShiftTooSmall",
    "StepFailure",
    "converge",
    "energy_original",
    "free_energy",
    "free_energy_deriv",
    "h_factor",
    "ieq_variable",
    "init_random",
    "init_sinusoidal",
    "laplacian",
    "mobility",
    "normalize_config",
    "preset_config",
    "preset_names",
    "read_snapshot",
    "run",
    "validate_shift",
    "variable_laplacian",
    "verify",
]
