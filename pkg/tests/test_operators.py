import numpy as np
import pytest

from bfspec import closed_form as cf
from bfspec import operators, stokes
from bfspec.profiles import PeriodicProfile


def _setup(kappa=0.3, eps=0.01, K=16):
    exp = stokes.expand(kappa)
    eta, _, _ = stokes.wave_profiles(exp, eps, K)
    frakp = stokes.solve_frakp(eta)
    return exp, frakp


def test_convolution_matrix_matches_pointwise_product():
    K = 8
    f = PeriodicProfile.from_cos_sin(K, cos_amps={1: 0.7, 2: -0.2})
    g = PeriodicProfile.from_cos_sin(K, sin_amps={1: 0.3})
    M = operators.convolution_matrix(f, K)
    prod = M @ g.coeffs
    want = f.product(g).coeffs
    assert np.max(np.abs(prod - want)) < 1e-14


def test_flat_operator_matches_closed_form_eigenvalues():
    kappa, mu, K = 0.3, 0.1, 16
    eigs = np.linalg.eigvals(operators.assemble_flat(kappa, mu, K).matrix)
    for k in range(-8, 9):
        for sign in (1, -1):
            lam = cf.flat_eigenvalue(kappa, k, sign, mu)
            assert np.min(np.abs(eigs - lam)) < 1e-12


def test_factorization_and_hermiticity():
    exp, frakp = _setup()
    mu, eps, K = 0.05, 0.01, 16
    op = operators.assemble(exp, frakp, mu, eps, K)
    B = operators.assemble_B(exp, frakp, mu, eps, K)
    J, _ = operators.structure_matrices(K)
    assert np.max(np.abs(op.matrix - J @ B)) < 1e-13
    assert np.max(np.abs(B - B.conj().T)) < 1e-12 * np.linalg.norm(B, 2)


def test_reversibility_anticommutation():
    exp, frakp = _setup()
    K = 16
    op = operators.assemble(exp, frakp, 0.05, 0.01, K)
    _, R = operators.structure_matrices(K)
    defect = R @ op.matrix @ R + np.conj(op.matrix)
    assert np.max(np.abs(defect)) < 1e-13


def test_zero_amplitude_reduces_to_flat():
    exp, frakp = _setup()
    op = operators.assemble(exp, frakp, 0.05, 0.0, 16)
    flat = operators.assemble_flat(0.3, 0.05, 16)
    assert np.array_equal(op.matrix, flat.matrix)


def test_dump_load_roundtrip(tmp_path):
    exp, frakp = _setup()
    op = operators.assemble(exp, frakp, 0.05, 0.01, 16)
    path = tmp_path / "op.bin"
    operators.dump_operator(op, path)
    back = operators.load_operator(path)
    assert np.array_equal(back.matrix, op.matrix)
    assert back.kappa == op.kappa
    assert back.mu == op.mu
    assert back.eps == op.eps
    assert back.K == op.K


def test_transport_speed_contains_no_double_counted_correction():
    # The zero mode of the p coefficient carries the eps^2 speed correction;
    # the assembled advection block must therefore use the linear speed, and
    # the total constant advection equals c + eps^2*(p2_0) exactly.
    exp, frakp = _setup(kappa=0.2)
    eps, K = 0.01, 16
    op = operators.assemble(exp, frakp, 0.0, eps, K)
    # diagonal of the lower-right block on mode k=1: (c + p)_0 * i*k
    A22 = op.matrix[2 * K + 1:, 2 * K + 1:]
    const = A22[K + 1, K + 1] / 1j
    assert const == pytest.approx(exp.c + eps**2 * exp.p2_0, abs=1e-14)
