"""Characteristic evolution, the Picard solver and characteristic tracing."""

from .characteristics import CharacteristicPath, trace_characteristic
from .config import SolverConfig
from .picard import (
    PicardResult,
    constant_extension,
    contraction_ratio,
    picard_map,
    picard_schedule,
    picard_solve,
    sup_y_distance,
)
from .stepper import (
    Trajectory,
    advance,
    cfl_step,
    characteristic_speed,
    evolve,
    metric_for,
    rhs_Dh,
    source_coefficients,
    step,
    step_pair,
)

__all__ = [
    "CharacteristicPath",
    "PicardResult",
    "SolverConfig",
    "Trajectory",
    "advance",
    "cfl_step",
    "characteristic_speed",
    "constant_extension",
    "contraction_ratio",
    "evolve",
    "metric_for",
    "picard_map",
    "picard_schedule",
    "picard_solve",
    "rhs_Dh",
    "source_coefficients",
    "step",
    "step_pair",
    "sup_y_distance",
    "trace_characteristic",
]
