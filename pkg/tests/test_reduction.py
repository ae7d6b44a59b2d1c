import numpy as np
import pytest

from bfspec import reduction
from bfspec.errors import SingularSystem, StructureViolation


def _blocks_matrix(E, F, G):
    """Assemble the 4x4 operator J4 * [[E, F], [F*, G]]."""
    B = np.block([[E, F], [F.conj().T, G]])
    return reduction.J4 @ B


def _random_blocks(rng, f_scale=1.0):
    e = rng.uniform(-1.0, 1.0, size=3)
    g = rng.uniform(-1.0, 1.0, size=3)
    f = rng.uniform(-1.0, 1.0, size=4) * f_scale
    E = np.array([[e[0], 1j * e[1]], [-1j * e[1], e[2]]])
    G = np.array([[g[0], 1j * g[1]], [-1j * g[1], g[2]]])
    F = np.array([[f[0], 1j * f[1]], [1j * f[2], f[3]]])
    return E, F, G


def test_check_structure_roundtrip():
    rng = np.random.default_rng(1)
    E, F, G = _random_blocks(rng)
    m = _blocks_matrix(E, F, G)
    blocks = reduction.check_structure(m)
    assert np.allclose(blocks.E, E, atol=1e-14)
    assert np.allclose(blocks.F, F, atol=1e-14)
    assert np.allclose(blocks.G, G, atol=1e-14)


def test_check_structure_rejects_wrong_alternation():
    rng = np.random.default_rng(2)
    E, F, G = _random_blocks(rng)
    m = _blocks_matrix(E, F, G).astype(complex)
    m[0, 1] += 0.1j  # breaks the real/imaginary alternation
    with pytest.raises(StructureViolation):
        reduction.check_structure(m)


def test_sylvester_det_and_inverse_match_dense_oracle():
    rng = np.random.default_rng(3)
    for _ in range(200):
        s = reduction.SylvesterCoeffs(*rng.uniform(-2.0, 2.0, size=5))
        A = reduction.sylvester_matrix(s)
        det = np.linalg.det(A)
        if abs(det) < 1e-3:
            continue
        assert reduction.sylvester_det(s) == pytest.approx(det, rel=1e-12)
        inv = reduction.sylvester_inverse(s)
        assert np.allclose(inv @ A, np.eye(4), atol=1e-10)


def test_sylvester_permutation_case():
    # b = d = 1, a = c = e = 0: the system matrix is a signed permutation
    s = reduction.SylvesterCoeffs(a=0.0, b=1.0, c=0.0, d=1.0, e=0.0)
    A = reduction.sylvester_matrix(s)
    inv = reduction.sylvester_inverse(s)
    assert np.allclose(A @ inv, np.eye(4), atol=1e-14)
    assert reduction.sylvester_det(s) == pytest.approx(np.linalg.det(A),
                                                       rel=1e-14)


def test_sylvester_singular_raises():
    s = reduction.SylvesterCoeffs(a=0.0, b=0.0, c=0.0, d=0.0, e=0.0)
    with pytest.raises(SingularSystem):
        reduction.sylvester_inverse(s)


def test_solve_homological_residual():
    rng = np.random.default_rng(4)
    done = 0
    while done < 50:
        E, F, G = _random_blocks(rng)
        D1 = reduction.J2 @ E
        D0 = reduction.J2 @ G
        s = reduction.SylvesterCoeffs.from_blocks(E, G)
        A = reduction.sylvester_matrix(s)
        if abs(np.linalg.det(A)) < 1e-3:
            continue
        done += 1
        X = reduction.solve_homological(D1, D0, F)
        res = np.linalg.norm(D1 @ X - X @ D0 + reduction.J2 @ F)
        assert res < 1e-11


def test_block_diagonalize_removes_coupling():
    from bfspec.errors import NoConvergence
    rng = np.random.default_rng(5)
    converged = 0
    for _ in range(20):
        E, F, G = _random_blocks(rng, f_scale=0.02)
        m = _blocks_matrix(E, F, G)
        blocks = reduction.check_structure(m)
        try:
            bd = reduction.block_diagonalize(blocks)
        except (SingularSystem, NoConvergence):
            # the perturbative sweep legitimately diverges when the coupling
            # is large relative to the diagonal spectral separation
            continue
        converged += 1
        norm = blocks.norm()
        assert np.linalg.norm(bd.blocks.F) <= 1e-12 * norm
        Y = bd.transform
        sympl = np.linalg.norm(Y.conj().T @ reduction.J4 @ Y - reduction.J4)
        assert sympl <= 1e-11
        before = np.linalg.eigvals(blocks.l_matrix())
        after = np.linalg.eigvals(bd.blocks.l_matrix())
        drift = max(np.min(np.abs(after - lam)) for lam in before)
        assert drift <= 1e-10
    assert converged >= 10


def test_eigenpair_of_u():
    U2 = np.array([[1.0 + 2.0j, 0.5], [0.25, 1.0 + 2.0j]])
    lam = sorted(reduction.eigenpair_of_U(U2), key=lambda z: z.real)
    want = sorted(np.linalg.eigvals(U2), key=lambda z: z.real)
    assert lam[0] == pytest.approx(want[0])
    assert lam[1] == pytest.approx(want[1])
