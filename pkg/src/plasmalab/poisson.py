"""Spectral Poisson solve -lap(V) = charge with conducting walls.

The solve diagonalizes the Dirichlet/periodic Laplacian with a type-I sine
transform over the interior x1 rows and a real FFT over x2, dividing by the
continuum symbol pi^2*(k1^2 + 4*k2^2)/L^2.  Wall rows of the charge are
ignored (the sine basis cannot see them) and V is exactly zero on both walls.

The x1 derivative of the sine expansion is evaluated as a cosine series, so
E2 = -dV/dx2 vanishes identically on the walls and eigenfunction inputs are
differentiated exactly to rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.fft

from .fields import Field, FieldError, Grid


@dataclass(frozen=True)
class SpectralPlan:
    """Precomputed Laplacian eigenvalues for one grid.

    lam[p, q] is the symbol for sine wavenumber k1 = p + 1 (p = 0..n1-3) and
    Fourier wavenumber k2 = q of the half-spectrum (q = 0..n2/2); it is
    strictly positive because k1 >= 1.
    """

    grid: Grid
    lam: np.ndarray
    d2: np.ndarray  # i * 2*pi*k2/L multipliers for the x2 derivative

    @classmethod
    def build(cls, grid: Grid) -> "SpectralPlan":
        L = grid.box
        k1 = np.arange(1, grid.n1 - 1)
        k2 = np.arange(grid.n2 // 2 + 1)
        lam = np.pi**2 * (k1[:, None] ** 2 + 4.0 * k2[None, :] ** 2) / L**2
        d2 = 1j * 2.0 * np.pi * k2 / L
        d2[-1] = 0.0  # Nyquist derivative of a real signal samples to zero
        lam.setflags(write=False)
        d2.setflags(write=False)
        return cls(grid=grid, lam=lam, d2=d2)


@lru_cache(maxsize=32)
def plan_for(grid: Grid) -> SpectralPlan:
    return SpectralPlan.build(grid)


def _forward(data: np.ndarray) -> np.ndarray:
    """Raw sine/Fourier coefficients of the interior rows, shape (n1-2, n2/2+1)."""
    return np.fft.rfft(scipy.fft.dst(data[1:-1, :], type=1, axis=0), axis=1)


def _inverse(coef: np.ndarray, grid: Grid) -> np.ndarray:
    """Invert _forward, padding the wall rows with zeros."""
    out = np.zeros((grid.n1, grid.n2))
    out[1:-1, :] = scipy.fft.idst(
        np.fft.irfft(coef, n=grid.n2, axis=1), type=1, axis=0
    )
    return out


def solve_potential(charge: Field) -> Field:
    """Potential V with -lap(V) = charge, V = 0 on x1 = 0, L."""
    charge.require_finite()
    plan = plan_for(charge.grid)
    vhat = _forward(charge.data) / plan.lam
    return Field(charge.grid, _inverse(vhat, charge.grid))


@dataclass(frozen=True)
class ElectricField:
    """Components of E = -grad(V); e2 vanishes on both walls."""

    e1: Field
    e2: Field

    def __post_init__(self) -> None:
        if self.e1.grid != self.e2.grid:
            raise FieldError("electric field components on different grids")


def electric_field(v: Field) -> ElectricField:
    """Spectral gradient of the potential, componentwise negated."""
    grid = v.grid
    plan = plan_for(grid)

    # x1 derivative: sine amplitudes -> cosine series evaluated at all nodes.
    amp = _forward(v.data) / (grid.n1 - 1)  # true sine-mode amplitudes
    k1 = np.arange(1, grid.n1 - 1)
    cos_coef = (k1[:, None] * np.pi / grid.box) * amp
    z = np.zeros((grid.n1, amp.shape[1]), dtype=complex)
    z[1:-1, :] = 0.5 * cos_coef
    e1 = -np.fft.irfft(scipy.fft.dct(z, type=1, axis=0), n=grid.n2, axis=1)

    # x2 derivative row by row; wall rows of V are zero, so e2 is zero there.
    e2 = -np.fft.irfft(plan.d2[None, :] * np.fft.rfft(v.data, axis=1),
                       n=grid.n2, axis=1)
    return ElectricField(Field(grid, e1), Field(grid, e2))


def solve_field(charge: Field) -> ElectricField:
    """Convenience: electric field of the potential sourced by charge."""
    return electric_field(solve_potential(charge))


def perp(e: ElectricField) -> tuple[Field, Field]:
    """Quarter-turn rotation (a1, a2) -> (a2, -a1) applied to E."""
    return e.e2, Field(e.e1.grid, -e.e1.data)


def field_energy(e: ElectricField) -> float:
    """Integral of |E|^2 = |grad V|^2 over the box."""
    w = e.e1.grid.quad_weights()
    return float(np.sum(w * (e.e1.data**2 + e.e2.data**2)))


def laplacian(v: Field) -> Field:
    """Spectral Laplacian of a wall-vanishing field (for residual checks)."""
    plan = plan_for(v.grid)
    return Field(v.grid, -_inverse(plan.lam * _forward(v.data), v.grid))


def poincare_bound(charge: Field) -> float:
    """Upper bound (L/pi)^2 * ||charge||^2 on the field energy."""
    g = charge.grid
    return (g.box / np.pi) ** 2 * float(np.sum(g.quad_weights() * charge.data**2))


def charge_density(rho_plus: Field, rho_minus: Field) -> Field:
    """Poisson source rho_plus + rho_minus - 1 under the unit-mean convention."""
    return Field(rho_plus.grid, rho_plus.data + rho_minus.data - 1.0)


def mode_shape(grid: Grid, k1: int, k2: int) -> np.ndarray:
    """Complex Laplacian eigenfunction sin(k1 pi x1/L) exp(2i pi k2 x2/L)."""
    x1, x2 = grid.mesh()
    L = grid.box
    return np.sin(k1 * np.pi * x1 / L) * np.exp(2j * np.pi * k2 * x2 / L)
