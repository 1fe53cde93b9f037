import math

import numpy as np
import pytest

from plasmalab import (
    OrbitError,
    ParticleState,
    closed_form_orbit,
    drift_rhs,
    integrate_orbit,
    orbit_invariants,
)
from plasmalab.drifts import Trajectory, fall_rate


def closed_form_samples(p0, times):
    """Vectorized oracle for the exact orbit, independent of the module."""
    c1 = p0.x1 - p0.v2
    c2 = p0.v1**2 + p0.v2**2
    angle = c1 * times
    v1 = p0.v1 * np.cos(angle) - p0.v2 * np.sin(angle)
    v2 = p0.v1 * np.sin(angle) + p0.v2 * np.cos(angle)
    x1 = v2 + c1
    x2 = p0.x2 + p0.v1 - v1 - 0.5 * c2 * times
    return np.stack([x1, x2, v1, v2], axis=1)


def test_rhs_horizontal_start():
    d = drift_rhs(ParticleState(0.0, 0.0, 1.0, 0.0))
    assert (d.x1, d.x2, d.v1, d.v2) == (0.0, -0.5, 0.0, 0.0)


def test_rhs_vertical_start():
    d = drift_rhs(ParticleState(0.0, 0.0, 0.0, 1.0))
    assert (d.x1, d.x2, d.v1, d.v2) == (0.0, -1.5, 1.0, 0.0)


def test_rhs_rest_is_equilibrium():
    d = drift_rhs(ParticleState(0.3, -0.7, 0.0, 0.0))
    assert (d.x1, d.x2, d.v1, d.v2) == (0.0, 0.0, 0.0, 0.0)


def test_straight_fall_branch():
    # c1 = 0: the particle falls at rate |v|^2 / 2 without turning
    p0 = ParticleState(0.0, 0.0, 1.0, 0.0)
    end = closed_form_orbit(p0, 2.0)
    assert (end.x1, end.x2, end.v1, end.v2) == pytest.approx((0.0, -1.0, 1.0, 0.0))

    traj = integrate_orbit(p0, 1e-3, 100_000)
    final = traj.states[-1]
    assert final == pytest.approx([0.0, -50.0, 1.0, 0.0], abs=1e-6)


def test_closed_form_cyclotron_branch():
    p0 = ParticleState(0.0, 0.0, 0.0, 1.0)
    for t in [0.3, 2.0, 10.0]:
        s = closed_form_orbit(p0, t)
        assert s.v1 == pytest.approx(math.sin(t), abs=1e-14)
        assert s.v2 == pytest.approx(math.cos(t), abs=1e-14)
        assert s.x1 == pytest.approx(math.cos(t) - 1.0, abs=1e-14)
        assert s.x2 == pytest.approx(-math.sin(t) - 0.5 * t, abs=1e-14)
    assert -2.0 <= closed_form_orbit(p0, 5.1).x1 <= 0.0


def test_closed_form_t0_identity():
    p0 = ParticleState(0.4, -0.2, 0.8, -0.3)
    s = closed_form_orbit(p0, 0.0)
    assert (s.x1, s.x2, s.v1, s.v2) == (p0.x1, p0.x2, p0.v1, p0.v2)


def test_integrator_matches_closed_form():
    p0 = ParticleState(0.0, 0.0, 0.0, 1.0)
    traj = integrate_orbit(p0, 1e-3, 10_000)  # to t = 10
    exact = closed_form_samples(p0, traj.times)
    assert np.abs(traj.states - exact).max() < 1e-8


def test_zero_velocity_start_constant():
    traj = integrate_orbit(ParticleState(0.5, 0.5, 0.0, 0.0), 1e-2, 50)
    np.testing.assert_array_equal(traj.states, np.tile([0.5, 0.5, 0.0, 0.0], (51, 1)))


def test_invariants_on_exact_samples():
    p0 = ParticleState(0.2, 0.1, 0.6, -0.4)
    times = np.linspace(0.0, 30.0, 400)
    states = closed_form_samples(p0, times)
    traj = Trajectory(times=times, states=states)
    d1, d2, fall = orbit_invariants(traj)
    assert d1 < 1e-12 and d2 < 1e-12 and fall < 1e-12


def test_invariants_under_integration():
    p0 = ParticleState(0.0, 0.0, 0.0, 1.0)
    traj = integrate_orbit(p0, 1e-3, 20_000)
    d1, d2, fall = orbit_invariants(traj)
    assert d1 < 1e-8 and d2 < 1e-8 and fall < 1e-8


def test_halving_dt_is_fourth_order():
    # dt large enough that truncation error sits well above rounding
    p0 = ParticleState(0.0, 0.0, 0.0, 1.0)
    coarse = integrate_orbit(p0, 4e-2, 250)
    fine = integrate_orbit(p0, 2e-2, 500)
    res_c = max(orbit_invariants(coarse)[:2])
    res_f = max(orbit_invariants(fine)[:2])
    assert res_c / res_f > 12.0  # nominal 16 for a fourth-order scheme


def test_fall_rate_depends_only_on_speed():
    dt, n = 1e-3, 30_000
    a = integrate_orbit(ParticleState(0.0, 0.0, 0.0, 1.0), dt, n)
    b = integrate_orbit(ParticleState(0.8, -2.0, 0.6, -0.8), dt, n)  # also |v| = 1
    assert fall_rate(a) == pytest.approx(-0.5, abs=1e-8)
    assert fall_rate(b) == pytest.approx(-0.5, abs=1e-8)
    assert fall_rate(a) == pytest.approx(fall_rate(b), abs=1e-8)


def test_non_finite_abort_carries_step_index():
    with pytest.raises(OrbitError, match="step 1"):
        # the quadratic terms overflow the float range within one step
        integrate_orbit(ParticleState(0.0, 0.0, 1e150, 1e150), 1e3, 50)


def test_trajectory_validation():
    with pytest.raises(ValueError):
        Trajectory(times=np.array([0.0, 0.0]), states=np.zeros((2, 4)))
    with pytest.raises(ValueError):
        Trajectory(times=np.array([0.0]), states=np.zeros((2, 4)))
