"""Semi-Lagrangian time advance of the coupled two-density transport system.

Each density obeys d(rho)/dt = 0 along the characteristics of its own
divergence-free velocity U = (E2, -E1 - T), with E solved from the current
total charge.  A step traces every node backward with a midpoint rule in a
frozen field, then reads the departed value with bicubic Lagrange
interpolation: periodic stencils in x2, one-sided stencils against the walls
in x1 (characteristics cannot cross them because E2 vanishes there).

The frozen field is centered in time: a half-step predictor with the start
field supplies the densities from which the midpoint field is solved, and
the full step traces through that midpoint field.  This keeps the
self-consistent coupling second-order accurate, which the energy and
enstrophy-gap tolerances need at the reference resolution.

The scheme is unconditionally stable for this drift but steps are still kept
under the advective CFL so the backward feet stay within one cell and the
splitting error stays controlled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .fields import Field, Grid, Params, PlasmaState
from .poisson import ElectricField, charge_density, solve_field

Observer = Callable[[PlasmaState, int], None]

DENSITY_FLOOR = -1.0e-12


class CFLError(RuntimeError):
    """Requested step exceeds the advective CFL bound."""


class TraceError(RuntimeError):
    """Backward characteristic landed impossibly far outside the slab."""


@dataclass(frozen=True)
class StepperConfig:
    """Step-size policy; interpolation and substep scheme are fixed choices."""

    dt: float = math.inf
    cfl_safety: float = 0.5
    interpolation: str = "bicubic"
    substep_scheme: str = "rk2-backward-characteristics"

    def __post_init__(self) -> None:
        if not self.dt > 0.0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not 0.0 < self.cfl_safety <= 1.0:
            raise ValueError(f"cfl_safety must be in (0, 1], got {self.cfl_safety}")
        if self.interpolation != "bicubic":
            raise ValueError(f"unsupported interpolation {self.interpolation!r}")
        if self.substep_scheme != "rk2-backward-characteristics":
            raise ValueError(f"unsupported scheme {self.substep_scheme!r}")


def _lagrange_weights(xi: np.ndarray) -> np.ndarray:
    """Cubic Lagrange weights on integer offsets 0..3, shape xi.shape + (4,)."""
    a = xi
    b = xi - 1.0
    c = xi - 2.0
    d = xi - 3.0
    w = np.empty(xi.shape + (4,))
    w[..., 0] = b * c * d / -6.0
    w[..., 1] = a * c * d / 2.0
    w[..., 2] = a * b * d / -2.0
    w[..., 3] = a * b * c / 6.0
    return w


def interpolate_many(
    arrays: Sequence[np.ndarray], grid: Grid, p1: np.ndarray, p2: np.ndarray
) -> list[np.ndarray]:
    """Bicubic samples of several node arrays at shared scattered points.

    p1 must already lie in [0, L]; p2 wraps periodically.  Stencils shift
    one-sided near the walls instead of inventing exterior values.
    """
    n1, n2 = grid.n1, grid.n2
    p1, p2 = np.broadcast_arrays(np.asarray(p1, float), np.asarray(p2, float))
    shape = p1.shape

    u = np.clip(p1 / grid.h1, 0.0, n1 - 1.0)
    cell = np.minimum(u.astype(np.intp), n1 - 2)
    s1 = np.clip(cell - 1, 0, n1 - 4).reshape(-1)
    w1 = _lagrange_weights((u.reshape(-1) - s1).reshape(-1, 1))  # (N, 1, 4)
    w1 = w1[:, 0, :]

    v = p2 / grid.h2
    s2 = np.floor(v).astype(np.intp).reshape(-1) - 1
    w2 = _lagrange_weights((v.reshape(-1) - s2).reshape(-1, 1))[:, 0, :]

    offs = np.arange(4, dtype=np.intp)
    cols = (s2[:, None] + offs) % n2  # (N, 4)
    row_flat = [(s1 + a) * n2 for a in range(4)]  # base offset per stencil row
    out = []
    for data in arrays:
        flat_data = data.reshape(-1)
        acc = np.zeros(p1.size)
        for a in range(4):
            patch = flat_data.take(row_flat[a][:, None] + cols)
            acc += w1[:, a] * np.einsum("ij,ij->i", patch, w2)
        out.append(acc.reshape(shape))
    return out


def velocity_fields(
    state: PlasmaState, params: Params
) -> tuple[tuple[Field, Field], tuple[Field, Field]]:
    """Advecting velocities (U+, U-), each a (U_1, U_2) pair of fields.

    U = perp(E) - T e2 with E solved from the instantaneous total charge, so
    U_1 = E2 and U_2 = -E1 - T.
    """
    e = solve_field(charge_density(state.rho_plus, state.rho_minus))
    grid = state.grid
    u1 = e.e2
    u2_plus = Field(grid, -e.e1.data - params.t_plus)
    u2_minus = Field(grid, -e.e1.data - params.t_minus)
    return (u1, u2_plus), (u1, u2_minus)


def _max_speed(e: ElectricField, params: Params) -> float:
    e2max = float(np.max(np.abs(e.e2.data)))
    m1 = float(np.max(np.abs(-e.e1.data - params.t_plus)))
    m2 = float(np.max(np.abs(-e.e1.data - params.t_minus)))
    return max(e2max, m1, m2)


def cfl_dt(state: PlasmaState, params: Params, cfg: StepperConfig) -> float:
    """Largest step the safety fraction allows at the current velocities."""
    e = solve_field(charge_density(state.rho_plus, state.rho_minus))
    grid = state.grid
    speed = max(_max_speed(e, params), 1.0e-12)
    return cfg.cfl_safety * min(grid.h1, grid.h2) / speed


def advect_density(rho: Field, e: ElectricField, temp: float, dt: float) -> Field:
    """Backward-characteristic transport of one density in a frozen field.

    Traces every node with the midpoint rule in the velocity (E2, -E1 - T),
    clamps the feet to the slab, and reads the departed values bicubically.
    """
    grid = rho.grid
    x1, x2 = grid.mesh()
    u1 = e.e2.data
    neg_e1 = -e.e1.data
    mid1 = np.clip(x1 - 0.5 * dt * u1, 0.0, grid.box)
    mid2 = x2 - 0.5 * dt * (neg_e1 - temp)
    e2_mid, neg_e1_mid = interpolate_many([u1, neg_e1], grid, mid1, mid2)
    foot1 = x1 - dt * e2_mid
    foot2 = x2 - dt * (neg_e1_mid - temp)
    if foot1.min() < -grid.h1 or foot1.max() > grid.box + grid.h1:
        raise TraceError(
            f"characteristic foot left the slab by more than one cell "
            f"(min {foot1.min():g}, max {foot1.max():g})"
        )
    foot1 = np.clip(foot1, 0.0, grid.box)
    (vals,) = interpolate_many([rho.data], grid, foot1, foot2)
    return Field(grid, np.maximum(vals, DENSITY_FLOOR)).require_finite()


def step(
    state: PlasmaState, params: Params, cfg: StepperConfig, dt: float | None = None
) -> PlasmaState:
    """One backward-characteristic update of both densities by dt.

    dt defaults to cfg.dt and must respect the safety-1 CFL bound.  The
    start field drives a half-step predictor of both densities; the field
    solved from the predicted midpoint charge then carries the full step.
    """
    grid = state.grid
    if dt is None:
        dt = cfg.dt
    e0 = solve_field(charge_density(state.rho_plus, state.rho_minus))
    speed = _max_speed(e0, params)
    limit = min(grid.h1, grid.h2) / max(speed, 1.0e-12)
    if dt > limit * (1.0 + 1.0e-9):
        raise CFLError(f"dt={dt:g} exceeds the CFL limit {limit:g}")

    half_plus = advect_density(state.rho_plus, e0, params.t_plus, 0.5 * dt)
    half_minus = advect_density(state.rho_minus, e0, params.t_minus, 0.5 * dt)
    e_mid = solve_field(charge_density(half_plus, half_minus))

    return PlasmaState(
        advect_density(state.rho_plus, e_mid, params.t_plus, dt),
        advect_density(state.rho_minus, e_mid, params.t_minus, dt),
        time=state.time + dt,
    )


def run(
    state: PlasmaState,
    params: Params,
    cfg: StepperConfig,
    t_end: float,
    observers: Iterable[Observer] = (),
) -> PlasmaState:
    """Advance to t_end with CFL-limited steps, notifying observers.

    Observers fire once for the initial state (step 0) and after every step.
    The step size is min(cfg.dt, the CFL step, the remaining time).
    """
    observers = list(observers)
    if t_end < state.time:
        raise ValueError(f"t_end={t_end} is before state.time={state.time}")
    _notify(observers, state, 0)
    count = 0
    horizon = max(1.0, abs(t_end))
    while t_end - state.time > 1.0e-12 * horizon:
        dt = min(cfg.dt, cfl_dt(state, params, cfg), t_end - state.time)
        state = step(state, params, cfg, dt)
        count += 1
        _notify(observers, state, count)
    return state


def _notify(observers: list[Observer], state: PlasmaState, count: int) -> None:
    for obs in observers:
        try:
            obs(state, count)
        except Exception as exc:
            raise RuntimeError(
                f"observer {obs!r} failed at t={state.time:g} (step {count})"
            ) from exc
