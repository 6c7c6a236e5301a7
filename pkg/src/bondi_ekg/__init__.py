"""Characteristic solver for the spherically symmetric Einstein-Klein-Gordon system.

The field ``h = d_r(r phi)`` is evolved along ingoing null rays in Bondi
coordinates; the metric is reconstructed on every slice from integral
constraints.
"""

from .errors import (
    ConfigurationError,
    ContractViolation,
    DomainError,
    InsufficientStencilError,
    MetricDegeneracyError,
    NumericError,
    UndefinedRatioError,
)
from .fields import FieldSlice, make_slice
from .grid import RadialGrid, build_grid
from .metric import MetricSlice, compute_metric
from .potential import CustomPotential, PotentialSpec

__version__ = "0.1.0"

__all__ = [
    "ConfigurationError",
    "ContractViolation",
    "CustomPotential",
    "DomainError",
    "FieldSlice",
    "InsufficientStencilError",
    "MetricDegeneracyError",
    "MetricSlice",
    "NumericError",
    "PotentialSpec",
    "RadialGrid",
    "UndefinedRatioError",
    "build_grid",
    "compute_metric",
    "make_slice",
]
