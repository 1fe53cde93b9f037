"""Desk-scale laboratory for a bi-temperature drift-fluid plasma slab.

The package couples a spectral Dirichlet/periodic Poisson solver to a
semi-Lagrangian advection of two densities, analyzes the linearized waves in
closed form, traces field-free guiding-center orbits, and records the energy
functionals that certify stability on the good-curvature side (and on the
bad side above the confinement gradient threshold).
"""

from .diagnostics import (
    DiagnosticsError,
    EnergyRecord,
    certified_amplification,
    cross_term_residual,
    fit_growth_rate,
    record,
    temperature_field,
)
from .drifts import (
    OrbitError,
    ParticleState,
    Trajectory,
    closed_form_orbit,
    drift_rhs,
    fall_rate,
    integrate_orbit,
    orbit_invariants,
)
from .fields import (
    Field,
    FieldError,
    Grid,
    Params,
    PlasmaState,
    SizingError,
    SteadyKind,
    integrate,
    l2_norm,
    make_grid,
    steady_state,
    total_mass,
)
from .modes import (
    ModeAnalysis,
    ModeError,
    ModeIndex,
    analyze_mode,
    discriminant,
    dominant_mode,
    eigenmode_fields,
    growth_rate,
    mode_matrix,
    mode_threshold,
)
from .poisson import (
    ElectricField,
    SpectralPlan,
    charge_density,
    electric_field,
    field_energy,
    laplacian,
    mode_shape,
    perp,
    poincare_bound,
    solve_field,
    solve_potential,
)
from .transport import (
    CFLError,
    StepperConfig,
    TraceError,
    cfl_dt,
    interpolate_many,
    run,
    step,
    velocity_fields,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
