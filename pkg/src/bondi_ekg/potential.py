"""Scalar potentials and their growth certificate.

The built-in family is the power law ``V = eps * lam * |phi|^(p+1) / (p+1)``.
Any object exposing ``V``, ``dV``, ``d2V``, ``K0`` and ``p`` can stand in
for it; :class:`CustomPotential` wraps three callables for that purpose.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConfigurationError


@dataclass(frozen=True)
class PotentialSpec:
    p: float = 3.0
    sign: int = -1
    coupling: float = 1.0

    def __post_init__(self):
        if not self.p >= 3.0:
            raise ConfigurationError(f"potential exponent p must be >= 3, got {self.p}")
        if self.sign not in (-1, 1):
            raise ConfigurationError(f"potential sign must be -1 or +1, got {self.sign}")
        if not (np.isfinite(self.coupling) and self.coupling >= 0.0):
            raise ConfigurationError(f"potential coupling must be >= 0, got {self.coupling}")

    @property
    def K0(self) -> float:
        return self.coupling * (1.0 / (self.p + 1.0) + 1.0 + self.p)

    @property
    def massless(self) -> bool:
        return self.coupling == 0.0

    def V(self, phi):
        a = np.abs(phi)
        return self.sign * self.coupling * a ** (self.p + 1.0) / (self.p + 1.0)

    def dV(self, phi):
        return self.sign * self.coupling * np.sign(phi) * np.abs(phi) ** self.p

    def d2V(self, phi):
        return self.sign * self.coupling * self.p * np.abs(phi) ** (self.p - 1.0)


@dataclass(frozen=True)
class CustomPotential:
    """User-supplied potential; ``K0`` and ``p`` are declared, not derived."""

    V: Callable
    dV: Callable
    d2V: Callable
    K0: float
    p: float

    @property
    def massless(self) -> bool:
        return False


def V(spec, phi):
    return spec.V(phi)


def dV(spec, phi):
    return spec.dV(phi)


def d2V(spec, phi):
    return spec.d2V(phi)


def verify_estimate(spec, phi_samples, rtol: float = 1e-12) -> tuple[bool, float]:
    """Check ``|V| + |V'||phi| + |V''||phi|^2 <= K0 |phi|^(p+1)`` on samples.

    The built-in family meets the bound with equality, so a relative slack
    of ``rtol`` absorbs rounding.
    """
    phi = np.atleast_1d(np.asarray(phi_samples, dtype=np.float64))
    if phi.size == 0:
        raise ConfigurationError("verify_estimate needs at least one sample")
    a = np.abs(phi)
    lhs = np.abs(spec.V(phi)) + np.abs(spec.dV(phi)) * a + np.abs(spec.d2V(phi)) * a**2
    rhs = spec.K0 * a ** (spec.p + 1.0)
    ok = bool(np.all(lhs <= rhs * (1.0 + rtol) + 1e-300))
    return ok, float(spec.K0)
