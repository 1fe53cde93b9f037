"""Field-free guiding-center characteristics and their exact invariants.

The ODE system

    dx1/dt = -v1 (v2 - x1)
    dx2/dt =  v2 (x1 - v2) - (v1^2 + v2^2)/2
    dv1/dt =  v2 (-x1 + v2)
    dv2/dt = -v1 (-x1 + v2)

conserves c1 = x1 - v2 and c2 = v1^2 + v2^2, which closes it exactly: the
velocity rotates rigidly at angular rate c1, x1 rides the rotation, and
x2 + v1 falls linearly at rate c2/2 (the magnetic-gradient drift).  The
closed form doubles as the oracle for the fixed-step integrator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class OrbitError(RuntimeError):
    """Integration produced a non-finite state."""


@dataclass(frozen=True)
class ParticleState:
    x1: float
    x2: float
    v1: float
    v2: float

    def __post_init__(self) -> None:
        vals = (self.x1, self.x2, self.v1, self.v2)
        if not all(math.isfinite(v) for v in vals):
            raise OrbitError(f"non-finite particle state {vals}")


def drift_rhs(p: ParticleState) -> ParticleState:
    """Time derivative of (x1, x2, v1, v2) under the drift system."""
    dx1 = -p.v1 * (p.v2 - p.x1)
    dx2 = p.v2 * (p.x1 - p.v2) - 0.5 * (p.v1**2 + p.v2**2)
    dv1 = p.v2 * (-p.x1 + p.v2)
    dv2 = -p.v1 * (-p.x1 + p.v2)
    return ParticleState(dx1, dx2, dv1, dv2)


@dataclass(frozen=True)
class Trajectory:
    """Sampled orbit: times strictly increasing, states row-per-sample."""

    times: np.ndarray  # shape (m,)
    states: np.ndarray  # shape (m, 4), columns x1, x2, v1, v2

    def __post_init__(self) -> None:
        if len(self.times) != len(self.states):
            raise ValueError("times and states lengths differ")
        if len(self.times) == 0:
            raise ValueError("empty trajectory")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")
        self.times.setflags(write=False)
        self.states.setflags(write=False)

    def state(self, i: int) -> ParticleState:
        return ParticleState(*self.states[i])


def integrate_orbit(p0: ParticleState, dt: float, n: int) -> Trajectory:
    """Classical fourth-order fixed-step integration, n+1 samples from t=0."""
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    if n < 1:
        raise ValueError(f"need at least one step, got n={n}")

    out = np.empty((n + 1, 4))
    y = (p0.x1, p0.x2, p0.v1, p0.v2)
    out[0] = y
    half = 0.5 * dt
    for step in range(1, n + 1):
        try:
            k1 = _rhs4(y)
            k2 = _rhs4(_axpy(y, half, k1))
            k3 = _rhs4(_axpy(y, half, k2))
            k4 = _rhs4(_axpy(y, dt, k3))
            y = tuple(
                y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
                for i in range(4)
            )
        except OverflowError as exc:
            raise OrbitError(f"state overflow at step {step}") from exc
        if not all(math.isfinite(v) for v in y):
            raise OrbitError(f"non-finite state at step {step}")
        out[step] = y
    times = dt * np.arange(n + 1)
    return Trajectory(times=times, states=out)


def _rhs4(y):
    x1, x2, v1, v2 = y
    w = v2 - x1
    return (
        -v1 * w,
        -v2 * w - 0.5 * (v1 * v1 + v2 * v2),
        v2 * w,
        -v1 * w,
    )


def _axpy(y, a, k):
    return (y[0] + a * k[0], y[1] + a * k[1], y[2] + a * k[2], y[3] + a * k[3])


def closed_form_orbit(p0: ParticleState, t: float) -> ParticleState:
    """Exact solution: rigid velocity rotation plus the constant-rate fall.

    With c1 = x1(0) - v2(0) and c2 = |v(0)|^2:
    v(t) rotates by angle c1*t, x1(t) = v2(t) + c1, and
    x2(t) = x2(0) + v1(0) - v1(t) - (c2/2) t.  c1 = 0 degenerates smoothly
    to a constant velocity and a straight vertical fall.
    """
    c1 = p0.x1 - p0.v2
    c2 = p0.v1**2 + p0.v2**2
    cos_a, sin_a = math.cos(c1 * t), math.sin(c1 * t)
    v1 = p0.v1 * cos_a - p0.v2 * sin_a
    v2 = p0.v1 * sin_a + p0.v2 * cos_a
    x1 = p0.x1 + (v2 - p0.v2)  # equals v2 + c1, exact at t = 0
    x2 = p0.x2 + (p0.v1 - v1) - 0.5 * c2 * t
    return ParticleState(x1, x2, v1, v2)


def orbit_invariants(traj: Trajectory) -> tuple[float, float, float]:
    """Worst-case drifts of the three conserved combinations.

    Returns (max |c1(t) - c1(0)|, max |c2(t) - c2(0)|, max fall residual)
    where the fall residual is the deviation of x2 + v1 + (c2(0)/2) t from
    its initial value.
    """
    x1 = traj.states[:, 0]
    x2 = traj.states[:, 1]
    v1 = traj.states[:, 2]
    v2 = traj.states[:, 3]
    c1 = x1 - v2
    c2 = v1**2 + v2**2
    fall = x2 + v1 + 0.5 * c2[0] * traj.times
    return (
        float(np.max(np.abs(c1 - c1[0]))),
        float(np.max(np.abs(c2 - c2[0]))),
        float(np.max(np.abs(fall - fall[0]))),
    )


def fall_rate(traj: Trajectory) -> float:
    """Least-squares slope of x2 + v1 against time (expected -c2/2)."""
    y = traj.states[:, 1] + traj.states[:, 2]
    coeffs = np.polyfit(traj.times, y, 1)
    return float(coeffs[0])
