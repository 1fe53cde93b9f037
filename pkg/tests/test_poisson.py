import numpy as np
import pytest

from plasmalab import (
    Field,
    SteadyKind,
    charge_density,
    electric_field,
    field_energy,
    laplacian,
    make_grid,
    mode_shape,
    perp,
    poincare_bound,
    solve_field,
    solve_potential,
    steady_state,
)
from plasmalab.fields import integrate


def grid(n=33, box=1.0):
    return make_grid(n, n - 1, box)


def random_bandlimited(g, rng, kmax1=8, kmax2=7):
    """Random combination of wall-sine waves inside the resolvable band."""
    data = np.zeros((g.n1, g.n2))
    for k1 in range(1, kmax1 + 1):
        for k2 in range(-kmax2, kmax2 + 1):
            data += np.real(
                (rng.normal() + 1j * rng.normal()) * mode_shape(g, k1, k2)
            )
    return Field(g, data)


def test_eigenfunction_solve_exact():
    g = grid()
    x1, x2 = g.mesh()
    f = Field(g, np.sin(np.pi * x1) * np.cos(2 * np.pi * x2) + 0 * x2)
    v = solve_potential(f)
    np.testing.assert_allclose(v.data, f.data / (5 * np.pi**2), atol=1e-15)


def test_zero_charge_zero_potential():
    g = grid()
    v = solve_potential(Field.zeros(g))
    assert np.all(v.data == 0.0)


def test_x2_independent_eigenfunction():
    g = grid()
    x1, x2 = g.mesh()
    f = Field(g, np.broadcast_to(np.sin(np.pi * x1), (g.n1, g.n2)).copy())
    v = solve_potential(f)
    np.testing.assert_allclose(v.data, f.data / np.pi**2, atol=1e-15)
    e = electric_field(v)
    np.testing.assert_allclose(
        e.e1.data, -np.cos(np.pi * x1) / np.pi + 0 * x2, atol=1e-13
    )
    np.testing.assert_allclose(e.e2.data, 0.0, atol=1e-15)


def test_dirichlet_rows_exact_and_wall_condition():
    g = grid()
    rng = np.random.default_rng(7)
    f = random_bandlimited(g, rng)
    v = solve_potential(f)
    assert np.all(v.data[0] == 0.0)
    assert np.all(v.data[-1] == 0.0)
    e = electric_field(v)
    assert np.abs(e.e2.data[0]).max() < 1e-10
    assert np.abs(e.e2.data[-1]).max() < 1e-10


def test_electric_field_of_mixed_mode():
    # oracle: differentiate V = sin(pi x1) sin(2 pi x2)/(5 pi^2) analytically
    g = grid()
    x1, x2 = g.mesh()
    v = Field(g, np.sin(np.pi * x1) * np.sin(2 * np.pi * x2) / (5 * np.pi**2))
    e = electric_field(v)
    e2_exact = -2 * np.sin(np.pi * x1) * np.cos(2 * np.pi * x2) / (5 * np.pi)
    e1_exact = -np.cos(np.pi * x1) * np.sin(2 * np.pi * x2) / (5 * np.pi)
    np.testing.assert_allclose(e.e2.data, e2_exact, atol=1e-10)
    np.testing.assert_allclose(e.e1.data, e1_exact, atol=1e-10)


def test_perp_rotation():
    from plasmalab.poisson import ElectricField

    g = grid(9)
    const = ElectricField(Field(g, np.ones((g.n1, g.n2))), Field.zeros(g))
    p1, p2 = perp(const)
    np.testing.assert_array_equal(p1.data, 0.0)
    np.testing.assert_array_equal(p2.data, -1.0)

    zero = ElectricField(Field.zeros(g), Field.zeros(g))
    z1, z2 = perp(zero)
    assert not z1.data.any() and not z2.data.any()

    e = solve_field(Field(g, np.real(mode_shape(g, 1, 1))))
    p1, p2 = perp(e)
    np.testing.assert_array_equal(p1.data, e.e2.data)
    np.testing.assert_array_equal(p2.data, -e.e1.data)
    # perp applied twice is a half-turn
    q1, q2 = perp(ElectricField(p1, p2))
    np.testing.assert_allclose(q1.data, -e.e1.data, atol=0)
    np.testing.assert_allclose(q2.data, -e.e2.data, atol=0)


def test_field_energy_analytic():
    # oracle: direct quadrature of the analytic gradient of sin(pi x1)/pi^2
    g = grid(65)
    x1, x2 = g.mesh()
    v = Field(g, np.broadcast_to(np.sin(np.pi * x1) / np.pi**2, (g.n1, g.n2)).copy())
    e = electric_field(v)
    grad_sq = (np.cos(np.pi * x1) / np.pi) ** 2 + 0 * x2
    direct = float(np.sum(g.quad_weights() * grad_sq))
    assert direct == pytest.approx(1 / (2 * np.pi**2), rel=1e-12)
    assert field_energy(e) == pytest.approx(1 / (2 * np.pi**2), rel=1e-12)


def test_field_energy_quadratic_scaling():
    g = grid(17)
    e = solve_field(Field(g, np.real(mode_shape(g, 2, 1))))
    from plasmalab.poisson import ElectricField

    doubled = ElectricField(
        Field(g, 2 * e.e1.data), Field(g, 2 * e.e2.data)
    )
    assert field_energy(doubled) == pytest.approx(4 * field_energy(e), rel=1e-13)


def test_laplacian_residual():
    g = grid(33)
    rng = np.random.default_rng(3)
    f = random_bandlimited(g, rng)
    v = solve_potential(f)
    res = laplacian(v).data[1:-1] + f.data[1:-1]
    rel = np.abs(res).max() / np.abs(f.data).max()
    assert rel < 1e-8


def test_poincare_bound_random_charges():
    g = grid(33)
    rng = np.random.default_rng(11)
    for _ in range(100):
        f = random_bandlimited(g, rng, kmax1=6, kmax2=5)
        energy = field_energy(solve_field(f))
        assert energy <= poincare_bound(f) * (1 + 1e-12) + 1e-15


def test_self_adjointness():
    g = grid(33)
    rng = np.random.default_rng(5)
    for _ in range(5):
        f = random_bandlimited(g, rng)
        h = random_bandlimited(g, rng)
        lhs = integrate(Field(g, f.data * solve_potential(h).data))
        rhs = integrate(Field(g, h.data * solve_potential(f).data))
        assert lhs == pytest.approx(rhs, abs=1e-10 * max(1.0, abs(lhs)))


def test_charge_density_of_steady_state_vanishes():
    g = grid(17)
    s = steady_state(SteadyKind.GOOD_CURVATURE, g)
    c = charge_density(s.rho_plus, s.rho_minus)
    np.testing.assert_allclose(c.data, 0.0, atol=1e-15)
