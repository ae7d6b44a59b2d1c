import numpy as np
import pytest

from bfspec import closed_form as cf
from bfspec import operators, spectral, stokes
from bfspec.errors import GapFailure


def _operator(kappa=0.3, eps=0.01, mu=0.05, K=16):
    exp = stokes.expand(kappa)
    eta, _, _ = stokes.wave_profiles(exp, eps, K)
    frakp = stokes.solve_frakp(eta)
    return operators.assemble(exp, frakp, mu, eps, K)


def test_eig_residuals_are_small():
    spec = spectral.eig(_operator())
    assert np.max(spec.residuals) < 1e-9
    assert np.all(np.diff(np.abs(spec.eigenvalues)) >= 0.0)


def test_near_zero_quadruple_labels_flat_case():
    kappa, mu, K = 0.3, 0.0005, 16
    spec = spectral.eig(operators.assemble_flat(kappa, mu, K))
    quad = spectral.near_zero_quadruple(spec, kappa, mu)
    assert quad.labeled
    p0p = cf.flat_eigenvalue(kappa, 0, 1, mu)
    p0m = cf.flat_eigenvalue(kappa, 0, -1, mu)
    got0 = sorted((quad.lambda0_plus, quad.lambda0_minus),
                  key=lambda z: z.imag)
    want0 = sorted((p0p, p0m), key=lambda z: z.imag)
    assert got0[0] == pytest.approx(want0[0], abs=1e-10)
    assert got0[1] == pytest.approx(want0[1], abs=1e-10)
    lam1 = cf.flat_eigenvalue(kappa, 1, 1, mu)
    lam1m = cf.flat_eigenvalue(kappa, 1, -1, mu)
    got = sorted((quad.lambda1_plus, quad.lambda1_minus), key=lambda z: z.imag)
    want = sorted((lam1, lam1m), key=lambda z: z.imag)
    assert got[0] == pytest.approx(want[0], abs=1e-10)
    assert got[1] == pytest.approx(want[1], abs=1e-10)


def test_near_zero_quadruple_gap_guard():
    spec = spectral.eig(operators.assemble_flat(0.3, 0.05, 16))
    with pytest.raises(GapFailure):
        spectral.near_zero_quadruple(spec, 0.3, 0.05, gap_factor=1e6)


def test_riesz_projector_properties():
    op = _operator(kappa=0.05, eps=0.01, mu=0.01, K=32)
    spec = spectral.eig(op)
    radius = spectral.contour_radius(spec)
    P = spectral.riesz_projector(op, radius, eigenvalues=spec.eigenvalues)
    assert np.linalg.norm(P @ P - P, 2) < 1e-8
    assert P.trace().real == pytest.approx(4.0, abs=1e-6)
    comm = np.linalg.norm(P @ op.matrix - op.matrix @ P, 2)
    assert comm < 1e-8 * np.linalg.norm(op.matrix, 2)
    L4 = spectral.compress(op, P)
    small = np.linalg.eigvals(L4)
    gap = max(np.min(np.abs(small - lam)) for lam in spec.eigenvalues[:4])
    assert gap < 1e-8


def test_symplectic_basis_gram_matrix():
    op = _operator(kappa=0.05, eps=0.01, mu=0.01, K=32)
    spec = spectral.eig(op)
    H = spectral.symplectic_subspace_basis(op, spec)
    from bfspec.reduction import J4
    J, _ = operators.structure_matrices(op.K)
    gram = H.conj().T @ J @ H
    assert np.max(np.abs(gram - J4)) < 1e-8


def test_figure_eight_trace_and_threshold():
    kappa, eps = 0.0, 0.01
    branch = spectral.trace_figure_eight(kappa, eps, K=16, n_samples=24)
    lead = cf.mu_bar_leading(kappa, eps)
    assert branch.mu_bar_numeric == pytest.approx(lead, rel=0.15)
    inside = branch.mu_grid < branch.mu_bar_numeric
    assert np.all(branch.lambda1_plus.real[inside][1:] > 0.0)
    # conjugate symmetry of the pair along the branch
    pair_sum = branch.lambda1_plus + np.conj(branch.lambda1_minus)
    assert np.max(np.abs(pair_sum.real)) < 1e-8


def test_max_growth_rate_matches_leading_order():
    kappa, eps = 0.0, 0.01
    mu_star, rate = spectral.max_growth_rate(kappa, eps, K=16)
    lead = cf.whitham_benjamin(kappa) * eps**2 / (2.0 * cf.coeffs_e(kappa)[1])
    assert rate == pytest.approx(lead, rel=0.10)
    assert 0.0 < mu_star < 1.05 * cf.mu_bar_leading(kappa, eps)


def test_not_unstable_raises():
    from bfspec.errors import NotUnstable
    with pytest.raises(NotUnstable):
        spectral.max_growth_rate(0.3, 0.01, K=16)
