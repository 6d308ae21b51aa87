"""Well-mixed counterpart: the replicator equation for the frequency of strategy 1."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .payoff import PayoffMatrix

DEFAULT_STEP = 1e-3
# round-off excursions outside [0, 1] up to this size are clamped, larger ones raise
CLAMP_TOL = 1e-9


class IntegrationError(ArithmeticError):
    pass


@dataclass
class ReplicatorTrajectory:
    times: np.ndarray
    u1_values: np.ndarray

    @property
    def final(self) -> float:
        return float(self.u1_values[-1])


@dataclass(frozen=True)
class RegimeReport:
    a1: float
    a2: float
    regime: str
    interior_fixed_point: Optional[float] = None
    interior_stability: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "a1": self.a1,
            "a2": self.a2,
            "regime": self.regime,
            "interior_fixed_point": self.interior_fixed_point,
            "interior_stability": self.interior_stability,
        }


def replicator_rhs(pm: PayoffMatrix, u1: float) -> float:
    u2 = 1 - u1
    phi1 = pm.a11 * u1 + pm.a12 * u2
    phi2 = pm.a21 * u1 + pm.a22 * u2
    return u1 * u2 * (phi1 - phi2)


def replicator_rhs_derivative(pm: PayoffMatrix, u1: float) -> float:
    """d/du1 of :func:`replicator_rhs`."""
    # rhs = u(1-u) g(u) with g(u) = a1 u - a2 (1-u), g' = a1 + a2
    g = pm.a1 * u1 - pm.a2 * (1 - u1)
    return (1 - 2 * u1) * g + u1 * (1 - u1) * (pm.a1 + pm.a2)


def integrate_replicator(pm: PayoffMatrix, u0: float, t_end: float,
                         step: float = DEFAULT_STEP, sample_every: int = 1
                         ) -> ReplicatorTrajectory:
    """Fixed-step classical RK4 from ``u0`` up to ``t_end``.

    The last step is shortened so the trajectory ends exactly at ``t_end``.
    Every ``sample_every``-th step is kept, plus the final one.
    """
    if not 0 <= u0 <= 1:
        raise ValueError(f"u0 must lie in [0, 1], got {u0!r}")
    if not (t_end > 0 and step > 0):
        raise ValueError("t_end and step must be positive")

    n_steps = max(1, math.ceil(t_end / step - 1e-9))
    f = lambda u: replicator_rhs(pm, u)  # noqa: E731
    times = [0.0]
    values = [float(u0)]
    t, u = 0.0, float(u0)
    for k in range(1, n_steps + 1):
        h = t_end - t if k == n_steps else step
        k1 = f(u)
        k2 = f(u + 0.5 * h * k1)
        k3 = f(u + 0.5 * h * k2)
        k4 = f(u + h * k3)
        u = u + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        t = t_end if k == n_steps else k * step
        if not math.isfinite(u):
            raise IntegrationError(f"non-finite value at t={t}")
        if u < -CLAMP_TOL or u > 1 + CLAMP_TOL:
            raise IntegrationError(f"u1={u} left [0, 1] at t={t}; reduce the step")
        u = min(max(u, 0.0), 1.0)
        if k % sample_every == 0 or k == n_steps:
            times.append(t)
            values.append(u)
    return ReplicatorTrajectory(np.array(times), np.array(values))


def classify_regime(pm: PayoffMatrix) -> RegimeReport:
    a1, a2 = pm.a1, pm.a2
    if a1 == 0 or a2 == 0:
        return RegimeReport(a1, a2, "degenerate")
    if a1 * a2 < 0:
        return RegimeReport(a1, a2, "dominance_1" if a1 > 0 else "dominance_2")
    u_star = a2 / (a1 + a2)
    if a1 > 0:
        return RegimeReport(a1, a2, "bistable", u_star, "unstable")
    return RegimeReport(a1, a2, "coexistence", u_star, "stable")
