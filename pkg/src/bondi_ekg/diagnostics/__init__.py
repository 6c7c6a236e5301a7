"""Residuals, decay monitors and analytic bound evaluators."""

from .bounds import (
    QUALITATIVE,
    BoundParams,
    admits_data,
    alpha,
    beta,
    bound_summary,
    gamma,
    kappa,
    lambda1,
    lambda2,
    sigma,
)
from .monitors import decay_monitor, du_h_monitor, du_h_series, slice_weighted_sups
from .records import RUN_COLUMNS, DiagnosticsRecord
from .residuals import (
    AXIS_EXCLUSION,
    ddu_weights,
    residual_ij,
    residual_rr,
    residual_supplementary,
    residual_wave,
    supplementary_from,
    wave_residual_from,
)

__all__ = [
    "AXIS_EXCLUSION",
    "BoundParams",
    "DiagnosticsRecord",
    "QUALITATIVE",
    "RUN_COLUMNS",
    "admits_data",
    "alpha",
    "beta",
    "bound_summary",
    "ddu_weights",
    "decay_monitor",
    "du_h_monitor",
    "du_h_series",
    "gamma",
    "kappa",
    "lambda1",
    "lambda2",
    "residual_ij",
    "residual_rr",
    "residual_supplementary",
    "residual_wave",
    "sigma",
    "slice_weighted_sups",
    "supplementary_from",
    "wave_residual_from",
]
