"""Slab geometry, physical parameters, field storage, and steady profiles.

Conventions (used by every module in this package):
- The slab is [0, L] x [0, L) with Dirichlet walls at x1 = 0, L and
  periodicity in x2.
- x1 nodes include both walls: x1_j = j*L/(n1-1), j = 0..n1-1.
- x2 nodes exclude the duplicate periodic node: x2_m = m*L/n2, m = 0..n2-1.
- Field data is a real (n1, n2) array, row-major over (x1 index, x2 index).
- Integrals use the trapezoid rule in x1 (wall weights 1/2) and the plain
  periodic sum times h2 in x2; this quadrature is exact for the sine/Fourier
  basis the Poisson solver works in.
- Densities follow the unit-mean convention: mean(rho_plus + rho_minus) = 1,
  i.e. total mass L**2, so the Poisson source rho_plus + rho_minus - 1 is
  mean-compatible for any box size.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class SizingError(ValueError):
    """Grid dimensions incompatible with the transform layout."""


class FieldError(ValueError):
    """Malformed field data (wrong shape, mismatched grids, non-finite)."""


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class Params:
    """Hot/cold temperatures and box size.

    The driving parameter of the whole model is the temperature gradient
    (t_plus - t_minus) / box.
    """

    t_plus: float
    t_minus: float
    box: float

    def __post_init__(self) -> None:
        if not (self.t_plus > self.t_minus > 0.0):
            raise ValueError(
                f"need t_plus > t_minus > 0, got {self.t_plus}, {self.t_minus}"
            )
        if not self.box > 0.0:
            raise ValueError(f"box size must be positive, got {self.box}")

    def gradient(self) -> float:
        """Temperature gradient (t_plus - t_minus) / box, always > 0."""
        return (self.t_plus - self.t_minus) / self.box


@dataclass(frozen=True)
class Grid:
    """Uniform tensor grid on the slab.

    n1 counts x1 nodes including both walls; n2 counts x2 nodes without the
    duplicate periodic node.  n1 - 1 and n2 must be powers of two so the
    sine/Fourier transforms stay index-aligned and fast.
    """

    n1: int
    n2: int
    box: float

    @property
    def h1(self) -> float:
        return self.box / (self.n1 - 1)

    @property
    def h2(self) -> float:
        return self.box / self.n2

    def x1(self) -> np.ndarray:
        """Wall-to-wall node coordinates, shape (n1,)."""
        return np.linspace(0.0, self.box, self.n1)

    def x2(self) -> np.ndarray:
        """Periodic node coordinates, shape (n2,)."""
        return np.arange(self.n2) * self.h2

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """Broadcastable (x1 column, x2 row) coordinate arrays."""
        return self.x1()[:, None], self.x2()[None, :]

    def quad_weights(self) -> np.ndarray:
        """Per-node quadrature weights, shape (n1, n2), summing to box**2."""
        w1 = np.full(self.n1, self.h1)
        w1[0] *= 0.5
        w1[-1] *= 0.5
        return w1[:, None] * np.full(self.n2, self.h2)[None, :]


def make_grid(n1: int, n2: int, box: float) -> Grid:
    """Validate sizes and build a Grid.

    Requires n1 >= 5, n2 >= 4, box > 0, and n1 - 1, n2 powers of two.
    """
    if n1 < 5 or n2 < 4:
        raise SizingError(f"grid too small: n1={n1} (min 5), n2={n2} (min 4)")
    if not _is_power_of_two(n1 - 1):
        raise SizingError(f"n1 - 1 = {n1 - 1} is not a power of two")
    if not _is_power_of_two(n2):
        raise SizingError(f"n2 = {n2} is not a power of two")
    if not box > 0.0:
        raise SizingError(f"box size must be positive, got {box}")
    return Grid(n1=n1, n2=n2, box=float(box))


@dataclass(frozen=True)
class Field:
    """Real scalar samples on a Grid, shape (n1, n2).

    The data array is frozen read-only on construction; operations return new
    fields, so values are safe to share across threads.
    """

    grid: Grid
    data: np.ndarray

    def __post_init__(self) -> None:
        if self.data.shape != (self.grid.n1, self.grid.n2):
            raise FieldError(
                f"data shape {self.data.shape} does not match grid "
                f"({self.grid.n1}, {self.grid.n2})"
            )
        arr = np.ascontiguousarray(self.data, dtype=np.float64)
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    def require_finite(self) -> "Field":
        if not np.isfinite(self.data).all():
            raise FieldError("field contains NaN or Inf samples")
        return self

    @classmethod
    def zeros(cls, grid: Grid) -> "Field":
        return cls(grid, np.zeros((grid.n1, grid.n2)))

    @classmethod
    def from_function(cls, grid: Grid, fn) -> "Field":
        """Sample fn(x1, x2) on the grid; fn must broadcast over arrays."""
        x1, x2 = grid.mesh()
        return cls(grid, np.broadcast_to(fn(x1, x2), (grid.n1, grid.n2)).copy())


def integrate(field: Field) -> float:
    """Quadrature of the field over the box (trapezoid in x1, sum in x2)."""
    return float(np.sum(field.grid.quad_weights() * field.data))


def l2_norm(field: Field) -> float:
    """Continuum-consistent L2 norm sqrt(integral of field**2)."""
    return float(np.sqrt(np.sum(field.grid.quad_weights() * field.data**2)))


class SteadyKind(enum.Enum):
    """Which side of the slab the linear temperature profile models."""

    GOOD_CURVATURE = "good"
    BAD_CURVATURE = "bad"


@dataclass(frozen=True)
class PlasmaState:
    """Hot and cold densities at one instant."""

    rho_plus: Field
    rho_minus: Field
    time: float

    def __post_init__(self) -> None:
        if self.rho_plus.grid != self.rho_minus.grid:
            raise FieldError("rho_plus and rho_minus live on different grids")

    @property
    def grid(self) -> Grid:
        return self.rho_plus.grid


def steady_state(kind: SteadyKind, grid: Grid) -> PlasmaState:
    """Linear-profile equilibrium with zero electric field.

    Bad curvature puts the hot plasma at x1 = 0 (rho_plus = 1 - x1/L); good
    curvature swaps the species.  Either way rho_plus + rho_minus = 1.
    """
    ramp = grid.x1()[:, None] / grid.box
    up = np.broadcast_to(ramp, (grid.n1, grid.n2)).copy()
    down = 1.0 - up
    if kind is SteadyKind.BAD_CURVATURE:
        plus, minus = down, up
    else:
        plus, minus = up, down
    return PlasmaState(Field(grid, plus), Field(grid, minus), time=0.0)


def total_mass(state: PlasmaState) -> float:
    """Integral of rho_plus + rho_minus over the box; L**2 at unit mean."""
    return integrate(state.rho_plus) + integrate(state.rho_minus)
