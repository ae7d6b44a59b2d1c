import numpy as np
import pytest

from bfspec import stokes
from bfspec.profiles import PeriodicProfile


def test_wave_profiles_parity_and_leading_coefficients():
    exp = stokes.expand(0.2)
    eta, psi, c = stokes.wave_profiles(exp, 0.01, 16)
    assert eta.cos_coefficient(1) == pytest.approx(0.01)
    assert psi.sin_coefficient(1) == pytest.approx(0.01 * exp.c)
    assert abs(eta.sin_coefficient(1)) < 1e-16
    assert abs(psi.cos_coefficient(1)) < 1e-16
    assert c == pytest.approx(exp.c + 1e-4 * exp.c2)


def test_coefficient_profiles_are_even_even_even_odd():
    exp = stokes.expand(0.2)
    profs = stokes.coefficient_profiles(exp, 0.01, 16)
    for name in ("p", "a", "g_minus_1"):
        assert abs(profs[name].sin_coefficient(1)) < 1e-16
    assert abs(profs["frakp"].cos_coefficient(1)) < 1e-16
    assert profs["frakp"].sin_coefficient(1) == pytest.approx(0.01)


def test_residual_scales_as_eps_cubed():
    res = [stokes.stokes_residual(0.2, eps)[0] for eps in (0.02, 0.01, 0.005)]
    assert res[0] / res[1] == pytest.approx(8.0, rel=0.05)
    assert res[1] / res[2] == pytest.approx(8.0, rel=0.05)


def test_solve_frakp_matches_second_order_expansion():
    kappa, eps = 0.2, 0.01
    exp = stokes.expand(kappa)
    eta, _, _ = stokes.wave_profiles(exp, eps, 32)
    frakp = stokes.solve_frakp(eta)
    want2 = eps**2 * (2.0 - kappa) / (2.0 * (1.0 - 2.0 * kappa))
    assert frakp.sin_coefficient(1) == pytest.approx(eps, abs=10 * eps**3)
    assert frakp.sin_coefficient(2) == pytest.approx(want2, abs=10 * eps**3)


def test_dirichlet_neumann_flat_surface_is_abs_d():
    eta = PeriodicProfile.from_cos_sin(16, cos_amps={})
    psi = PeriodicProfile.from_cos_sin(16, sin_amps={3: 1.0})
    g = stokes.dirichlet_neumann_taylor(eta, psi, order=2, K=16)
    # |D| sin(3x) = 3 sin(3x)
    assert g.sin_coefficient(3) == pytest.approx(3.0, abs=1e-13)


def test_dirichlet_neumann_first_order_commutator():
    # G1(eta) psi = D eta D psi - |D| eta |D| psi; for eta = cos(2x) and
    # psi = sin(x) this evaluates to sin(x) exactly.
    K = 32
    eta = PeriodicProfile.from_cos_sin(K, cos_amps={2: 1.0})
    psi = PeriodicProfile.from_cos_sin(K, sin_amps={1: 1.0})
    g0 = stokes.dirichlet_neumann_taylor(
        PeriodicProfile.from_cos_sin(K, cos_amps={}), psi, order=0, K=K)
    g = stokes.dirichlet_neumann_taylor(eta, psi, order=1, K=K)
    x = np.linspace(0.0, 2.0 * np.pi, 256, endpoint=False)
    lhs = np.real(g.values(256)) - np.real(g0.values(256))
    assert np.max(np.abs(lhs - np.sin(x))) < 1e-12
