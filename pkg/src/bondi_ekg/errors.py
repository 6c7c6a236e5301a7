"""Exception types raised by the solver and its harness."""

from __future__ import annotations


class ConfigurationError(ValueError):
    """Invalid run parameters (grid size, exponents, unknown config keys, ...)."""

    def __init__(self, message: str, violations: list[str] | None = None):
        self.violations = list(violations or [])
        if self.violations:
            message = message + "\n" + "\n".join(f"  - {v}" for v in self.violations)
        super().__init__(message)


class NumericError(ArithmeticError):
    """A NaN/Inf appeared in an input or an intermediate field."""


class DomainError(ValueError):
    """A point was requested outside the radial domain [0, r_max]."""


class ContractViolation(ValueError):
    """Arguments are individually valid but inconsistent with each other."""


class InsufficientStencilError(IndexError):
    """A u-difference was requested at a slice without the needed neighbours."""


class UndefinedRatioError(ZeroDivisionError):
    """A contraction ratio was requested for identical trajectories."""


class MetricDegeneracyError(RuntimeError):
    """g_tilde fell to or below the configured floor; the run cannot continue.

    ``trajectory`` carries the partial trajectory up to the last good slice
    when the error is raised from inside :func:`evolve`.
    """

    def __init__(self, u: float, min_gtilde: float, floor: float, trajectory=None):
        self.u = float(u)
        self.min_gtilde = float(min_gtilde)
        self.floor = float(floor)
        self.trajectory = trajectory
        super().__init__(
            f"metric degeneracy at u={self.u:.6g}: min g_tilde={self.min_gtilde:.6g} "
            f"<= floor {self.floor:.3g}"
        )
