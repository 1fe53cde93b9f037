"""Closed-form linear stability analysis of the two linear-profile equilibria.

Perturbing either equilibrium with a separable wall-vanishing wave
h(t) * sin(k1 pi x1/L) * exp(2i pi k2 x2/L) reduces the linearized dynamics
to a 2x2 system dh/dt = i B h per wavenumber pair.  With

    omega = 2 pi k2 / L              (vertical phase speed factor)
    lam   = pi^2 (k1^2 + 4 k2^2)/L^2 (Laplacian symbol of the wave)
    c     = omega / (L * lam)        (electrostatic coupling)

the bad-curvature matrix is

    B = [[omega*T+ - c, -c],
         [c,            omega*T- + c]]

and the good-curvature matrix flips the sign of every c term.  Instability
is governed by the discriminant

    D = -4 pi^2 k2^2 (T+ - T-) [ (T+ - T-) - 4 L / (pi^2 (k1^2 + 4 k2^2)) ]

on the bad side (D > 0 means a growing wave with rate sqrt(D)/(2L)); the
good-side analogue is negative for every admissible parameter set, so the
good side carries no growing wave at all.  Per-wave instability therefore
requires a temperature gradient below 4 / (pi^2 (k1^2 + 4 k2^2)), and the
largest such threshold over all waves is 4/(5 pi^2) at |k1| = |k2| = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields import Field, Grid, Params, SteadyKind, l2_norm
from .poisson import mode_shape


class ModeError(ValueError):
    """Invalid wavenumber pair or misuse of a non-growing analysis."""


@dataclass(frozen=True)
class ModeIndex:
    """Wall-sine wavenumber k1 >= 1 and periodic wavenumber k2 != 0.

    k2 = 0 waves carry no vertical electric field and are neutrally
    transported, so they are excluded from stability searches.
    """

    k1: int
    k2: int

    def __post_init__(self) -> None:
        if self.k1 < 1:
            raise ModeError(f"k1 must be >= 1, got {self.k1}")
        if self.k2 == 0:
            raise ModeError("k2 = 0 waves are neutral; use k2 != 0")


def _coefficients(mode: ModeIndex, params: Params) -> tuple[float, float, float]:
    L = params.box
    omega = 2.0 * np.pi * mode.k2 / L
    lam = np.pi**2 * (mode.k1**2 + 4.0 * mode.k2**2) / L**2
    c = omega / (L * lam)
    return omega, lam, c


def mode_matrix(mode: ModeIndex, params: Params, side: SteadyKind) -> np.ndarray:
    """Real 2x2 matrix B of the per-wave system dh/dt = i B h."""
    omega, _, c = _coefficients(mode, params)
    if side is SteadyKind.GOOD_CURVATURE:
        c = -c
    return np.array([
        [omega * params.t_plus - c, -c],
        [c, omega * params.t_minus + c],
    ])


def discriminant(mode: ModeIndex, params: Params, side: SteadyKind) -> float:
    """Discriminant D of the per-wave quadratic; D > 0 flags a growing wave."""
    dT = params.t_plus - params.t_minus
    L = params.box
    k1, k2 = mode.k1, mode.k2
    bracket = dT - 4.0 * L / (np.pi**2 * (k1**2 + 4.0 * k2**2))
    if side is SteadyKind.GOOD_CURVATURE:
        bracket = dT + 4.0 * L / (np.pi**2 * (k1**2 + 4.0 * k2**2))
    return -4.0 * np.pi**2 * k2**2 * dT * bracket


def _eigensystem(
    b: np.ndarray, disc: float
) -> tuple[complex, complex, np.ndarray]:
    """Quadratic-formula eigensolve of dh/dt = i B h.

    disc is the factored quadratic discriminant of B (equal to (b00-b11)^2 +
    4 b01 b10 exactly in real arithmetic); taking it in factored form keeps
    the branch continuous through zero and makes the rate vanish cleanly at
    a representable threshold instead of inheriting sqrt-of-rounding noise.
    Returns the two time-evolution eigenvalues sorted by descending real
    part, plus the unit eigenvector of the leading one.
    """
    tr = b[0, 0] + b[1, 1]
    root = np.sqrt(complex(disc))
    nu_a = 0.5 * (tr + root)
    nu_b = 0.5 * (tr - root)
    lam_a, lam_b = 1j * nu_a, 1j * nu_b
    if lam_b.real > lam_a.real:
        lam_a, lam_b = lam_b, lam_a
        nu_a = nu_b
    # b[0, 1] = -+c is nonzero for every admissible wave
    vec = np.array([b[0, 1], nu_a - b[0, 0]], dtype=complex)
    vec = vec / np.linalg.norm(vec)
    return lam_a, lam_b, vec


def _matrix_disc(mode: ModeIndex, params: Params, side: SteadyKind) -> float:
    return -discriminant(mode, params, side) / params.box**2


def growth_rate(mode: ModeIndex, params: Params, side: SteadyKind) -> float:
    """Largest real part over the wave's eigenvalues, floored at zero.

    Equals sqrt(D)/(2L) when the discriminant D is positive and 0 otherwise.
    """
    lam_a, _, _ = _eigensystem(
        mode_matrix(mode, params, side), _matrix_disc(mode, params, side)
    )
    return max(lam_a.real, 0.0)


def mode_threshold(mode: ModeIndex) -> float:
    """Critical temperature gradient 4/(pi^2 (k1^2 + 4 k2^2)) of one wave.

    The wave grows on the bad side exactly when the gradient is strictly
    below this value.
    """
    return 4.0 / (np.pi**2 * (mode.k1**2 + 4.0 * mode.k2**2))


@dataclass(frozen=True)
class ModeAnalysis:
    """Everything the stability analysis knows about one wave."""

    mode: ModeIndex
    side: SteadyKind
    matrix: np.ndarray
    eigenvalues: tuple[complex, complex]  # of the time evolution, Re-descending
    eigenvector: np.ndarray  # unit eigenvector of the leading eigenvalue
    discriminant: float
    growth_rate: float
    threshold: float


def analyze_mode(mode: ModeIndex, params: Params, side: SteadyKind) -> ModeAnalysis:
    b = mode_matrix(mode, params, side)
    lam_a, lam_b, vec = _eigensystem(b, _matrix_disc(mode, params, side))
    b.setflags(write=False)
    vec.setflags(write=False)
    return ModeAnalysis(
        mode=mode,
        side=side,
        matrix=b,
        eigenvalues=(lam_a, lam_b),
        eigenvector=vec,
        discriminant=discriminant(mode, params, side),
        growth_rate=max(lam_a.real, 0.0),
        threshold=mode_threshold(mode),
    )


def dominant_mode(params: Params, side: SteadyKind, k_max: int) -> ModeAnalysis | None:
    """Fastest-growing wave with 1 <= k1 <= k_max, 1 <= |k2| <= k_max.

    Ties break toward the smallest k1^2 + 4 k2^2, then toward k2 > 0.
    Returns None when every scanned wave is neutral.
    """
    if k_max < 1:
        raise ModeError(f"k_max must be >= 1, got {k_max}")
    best: ModeAnalysis | None = None
    for k1 in range(1, k_max + 1):
        for k2 in [k for a in range(1, k_max + 1) for k in (a, -a)]:
            cand = analyze_mode(ModeIndex(k1, k2), params, side)
            if cand.growth_rate <= 0.0:
                continue
            if best is None or _ranks_above(cand, best):
                best = cand
    return best


def _ranks_above(cand: ModeAnalysis, best: ModeAnalysis) -> bool:
    def key(a: ModeAnalysis):
        weight = a.mode.k1**2 + 4 * a.mode.k2**2
        return (-a.growth_rate, weight, a.mode.k2 < 0, abs(a.mode.k2), a.mode.k1)

    return key(cand) < key(best)


def eigenmode_fields(
    analysis: ModeAnalysis, amplitude: float, grid: Grid
) -> tuple[Field, Field]:
    """Real growing-wave density perturbation, L2-normalized to amplitude.

    Samples the real part of (h+, h-) times the wave shape, where (h+, h-)
    is the unit eigenvector of the growing eigenvalue, and rescales so the
    joint norm sqrt(||d_plus||^2 + ||d_minus||^2) equals the requested
    amplitude.  The perturbation integrates to zero because k2 != 0.
    """
    if analysis.growth_rate <= 0.0:
        raise ModeError(
            f"wave {analysis.mode} is neutral on side {analysis.side.value}; "
            "nothing to seed"
        )
    shape = mode_shape(grid, analysis.mode.k1, analysis.mode.k2)
    h_plus, h_minus = analysis.eigenvector
    d_plus = np.real(h_plus * shape)
    d_minus = np.real(h_minus * shape)
    raw = float(np.sqrt(
        l2_norm(Field(grid, d_plus)) ** 2 + l2_norm(Field(grid, d_minus)) ** 2
    ))
    scale = 0.0 if amplitude == 0.0 else amplitude / raw
    return Field(grid, scale * d_plus), Field(grid, scale * d_minus)
