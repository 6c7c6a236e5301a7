"""Analytic bound functions of the small-data theory.

The constants ``C, C1, ..., C4`` are never fixed by the theory; they are
user configuration with default 1, so every value here is qualitative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ConfigurationError

QUALITATIVE = "qualitative (free constants user-set)"


@dataclass(frozen=True)
class BoundParams:
    """Exponents, potential constant, free constants ``(C, C1, C2, C3, C4)`` and data size ``d``."""

    k: float = 3.0
    p: float = 3.0
    K0: float = 4.25
    C: tuple = (1.0, 1.0, 1.0, 1.0, 1.0)
    d: float = 0.0

    def __post_init__(self):
        problems = []
        if not self.k >= 3.0:
            problems.append(f"k must lie in [3, inf), got {self.k}")
        if not self.p >= self.k:
            problems.append(f"p must satisfy p >= k, got p={self.p}, k={self.k}")
        if len(self.C) != 5:
            problems.append(f"C needs five entries (C, C1..C4), got {len(self.C)}")
        if self.K0 < 0 or self.d < 0:
            problems.append("K0 and d must be non-negative")
        if problems:
            raise ConfigurationError("invalid bound parameters", problems)
        object.__setattr__(self, "C", tuple(float(c) for c in self.C))


def kappa(x, params: BoundParams):
    """Lower-bound function for g_tilde along characteristics; ``kappa(0) = 1``."""
    x = np.asarray(x, dtype=np.float64)
    if np.any(x < 0):
        raise ValueError("kappa needs x >= 0")
    k, p = params.k, params.p
    denom = (k - 1.0) ** 2 * (12.0 - 14.0 * k + 4.0 * k * k)
    out = np.exp(-4.0 * np.pi * x**2 / denom) + 8.0 * np.pi * params.K0 * x ** (p + 1.0) / 3.0
    return float(out) if out.ndim == 0 else out


def lambda1(x, params: BoundParams):
    """Self-map threshold: data with ``d < lambda1(x)`` keep the ball of radius x invariant."""
    x = np.asarray(x, dtype=np.float64)
    k, p = params.k, params.p
    _, C1, C2, _, _ = params.C
    kap = kappa(x, params)
    head = x * kap**k * np.exp(-C2 * (x**2 + x ** (k + 1) + x ** (p + 1)))
    head = head / (C1 * (1.0 + x**2 + x ** (k + 1) + x ** (p + 1) + x ** (p + 3)))
    out = head - (x**3 + x ** (k + 2) + x**p + x ** (p + 2) + x ** (p + 4))
    return float(out) if np.ndim(out) == 0 else out


def admits_data(d: float, x: float, params: BoundParams) -> bool:
    return bool(d < lambda1(x, params))


def _tail(x, d, p):
    return d + x**3 + x**p + x ** (p + 2)


def alpha(x, params: BoundParams):
    C, k, p, d = params.C[0], params.k, params.p, params.d
    poly = d + x**3 + x ** (k + 2) + x**p + x ** (p + 2) + x ** (p + 4)
    return (C * (x + x**p) * poly * (1.0 + x**2 + x ** (k + 1) + x ** (p + 1) + x ** (p + 3))
            * np.exp(C * (x**2 + x**4 + x ** (p + 1))))


def beta(x, params: BoundParams):
    C, p, d = params.C[0], params.p, params.d
    return C * (x + x**p) * _tail(x, d, p) * np.exp(C * (x**2 + x ** (p + 1)))


def gamma(x, params: BoundParams):
    C, p, d = params.C[0], params.p, params.d
    return C * x**p * _tail(x, d, p) * np.exp(C * (x**2 + x ** (p + 1)))


def sigma(x, params: BoundParams):
    C, p, d = params.C[0], params.p, params.d
    return C * x ** (p + 2) * _tail(x, d, p) * np.exp(C * (x**2 + x ** (p + 1)))


def lambda2(x, params: BoundParams):
    """Lipschitz constant of the Picard map in Y; ``lambda2(0) = 0``."""
    x = np.asarray(x, dtype=np.float64)
    k, p = params.k, params.p
    C3, C4 = params.C[3], params.C[4]
    bracket = (alpha(x, params) + beta(x, params) + gamma(x, params) + sigma(x, params)
               + x**2 + x ** (p - 1) + x ** (p + 1) + x ** (p + 3))
    out = C3 / kappa(x, params) ** (k - 1) * bracket * np.exp(C4 * (x**2 + x ** (p + 1)))
    return float(out) if np.ndim(out) == 0 else out


def bound_summary(x: float, params: BoundParams) -> dict:
    return {
        "label": QUALITATIVE,
        "x": float(x),
        "d": params.d,
        "kappa": kappa(x, params),
        "lambda1": lambda1(x, params),
        "lambda2": lambda2(x, params),
        "admits_data": admits_data(params.d, x, params),
    }
