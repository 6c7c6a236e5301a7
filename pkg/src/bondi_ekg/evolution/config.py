"""Solver settings shared by the stepper and the Picard solver."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ConfigurationError


@dataclass(frozen=True)
class SolverConfig:
    """Run-level solver parameters.

    The last four fields are test hooks: ``frozen_metric`` replaces every
    metric solve by Minkowski, ``interp_order`` selects the Lagrange order
    used at characteristic feet, ``potential_terms=False`` drops the
    V-dependent source terms, and ``adaptive=False`` keeps the first step
    size for the whole run.
    """

    k: float = 3.0
    cfl: float = 0.5
    u_end: float = 20.0
    output_every: int = 50
    picard_tol: float = 1e-8
    picard_max_iter: int = 30
    gtilde_floor: float = 1e-8
    frozen_metric: bool = False
    interp_order: int = 2
    potential_terms: bool = True
    adaptive: bool = True

    def __post_init__(self):
        problems = []
        if not self.k >= 3.0:
            problems.append(f"k must lie in [3, inf), got {self.k}")
        if not 0.0 < self.cfl <= 1.0:
            problems.append(f"cfl must lie in (0, 1], got {self.cfl}")
        if not (np.isfinite(self.u_end) and self.u_end > 0.0):
            problems.append(f"u_end must be positive, got {self.u_end}")
        if int(self.output_every) != self.output_every or self.output_every < 1:
            problems.append(f"output_every must be a positive integer, got {self.output_every}")
        if not self.picard_tol > 0.0:
            problems.append(f"picard_tol must be positive, got {self.picard_tol}")
        if int(self.picard_max_iter) != self.picard_max_iter or self.picard_max_iter < 1:
            problems.append(f"picard_max_iter must be a positive integer, got {self.picard_max_iter}")
        if not 0.0 <= self.gtilde_floor < 1.0:
            problems.append(f"gtilde_floor must lie in [0, 1), got {self.gtilde_floor}")
        if self.interp_order not in (1, 2, 3):
            problems.append(f"interp_order must be 1, 2 or 3, got {self.interp_order}")
        if problems:
            raise ConfigurationError("invalid solver configuration", problems)
