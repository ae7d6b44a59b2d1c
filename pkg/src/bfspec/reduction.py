"""Finite-dimensional 4x4 Hamiltonian/reversible algebra: structure checks,
the first decoupling conjugation, the closed-form Sylvester system, and
iterative full block-diagonalization."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (DegenerateG, NoConvergence, SingularSystem,
                     StructureViolation)

J2 = np.array([[0.0, 1.0], [-1.0, 0.0]])
J4 = np.block([[J2, np.zeros((2, 2))], [np.zeros((2, 2)), J2]])


@dataclass
class HamiltonianBlocks4:
    """Blocks of the self-adjoint factor B = [[E, F], [F*, G]] of a 4x4
    Hamiltonian matrix L = J4 B, with E, G Hermitian and the reversibility
    alternation pattern (entry (i, j) of B real iff i + j is even,
    1-indexed)."""

    E: np.ndarray
    F: np.ndarray
    G: np.ndarray

    def b_matrix(self) -> np.ndarray:
        return np.block([[self.E, self.F], [self.F.conj().T, self.G]])

    def l_matrix(self) -> np.ndarray:
        return J4 @ self.b_matrix()

    def norm(self) -> float:
        return float(np.linalg.norm(self.b_matrix(), 2))


@dataclass
class SylvesterCoeffs:
    """Real coefficients of the 4x4 linear system equivalent to the structured
    2x2 Sylvester equation: a = G12 - E12, b = G11, c = E22, d = G22,
    e = E11."""

    a: float
    b: float
    c: float
    d: float
    e: float

    @classmethod
    def from_blocks(cls, E: np.ndarray, G: np.ndarray) -> "SylvesterCoeffs":
        return cls(
            a=float(G[0, 1].imag - E[0, 1].imag),
            b=float(G[0, 0].real),
            c=float(E[1, 1].real),
            d=float(G[1, 1].real),
            e=float(E[0, 0].real),
        )


def check_structure(m: np.ndarray, tol: float = 1e-8) -> HamiltonianBlocks4:
    """Factor m = J4 B and validate that B is Hermitian with the real/imaginary
    alternation pattern; tolerance is relative to the norm of B."""
    m = np.asarray(m, dtype=complex)
    if m.shape != (4, 4):
        raise ValueError("expected a 4x4 matrix")
    B = -J4 @ m
    scale = max(float(np.linalg.norm(B, 2)), 1e-300)
    bad: list[tuple[int, int]] = []
    herm = B - B.conj().T
    if np.abs(herm).max() > tol * scale:
        i, j = np.unravel_index(int(np.argmax(np.abs(herm))), herm.shape)
        raise StructureViolation(
            f"factor not Hermitian (defect {np.abs(herm).max():.3e})",
            entries=((int(i), int(j)),))
    for i in range(4):
        for j in range(4):
            defect = B[i, j].imag if (i + j) % 2 == 0 else B[i, j].real
            if abs(defect) > tol * scale:
                bad.append((i, j))
    if bad:
        raise StructureViolation(
            "real/imaginary alternation pattern violated", entries=tuple(bad))
    return HamiltonianBlocks4(E=B[:2, :2], F=B[:2, 2:], G=B[2:, 2:])


def first_decoupling(blocks: HamiltonianBlocks4) -> tuple[HamiltonianBlocks4, np.ndarray]:
    """Symplectic conjugation annihilating the (1,1) entry of the coupling
    block F; returns the new blocks and the (exactly symplectic) transform."""
    scale = max(blocks.norm(), 1e-300)
    G11 = float(blocks.G[0, 0].real)
    if abs(G11) < 1e-12 * scale:
        raise DegenerateG(f"G11 = {G11:.3e} too small relative to norm {scale:.3e}")
    m = -float(blocks.F[0, 0].real) / G11
    P = np.diag([0.0, 1.0])
    Q = np.diag([1.0, 0.0])
    N = np.block([[np.zeros((2, 2)), -P], [Q, np.zeros((2, 2))]])
    Y = np.eye(4) + m * N
    B1 = Y.conj().T @ blocks.b_matrix() @ Y
    B1[0, 2] = 1j * B1[0, 2].imag  # annihilated by construction; drop rounding
    B1[2, 0] = -B1[0, 2]
    return HamiltonianBlocks4(E=B1[:2, :2], F=B1[:2, 2:], G=B1[2:, 2:]), Y


def sylvester_matrix(s: SylvesterCoeffs) -> np.ndarray:
    a, b, c, d, e = s.a, s.b, s.c, s.d, s.e
    return np.array([
        [a, b, c, 0.0],
        [d, a, 0.0, -c],
        [e, 0.0, a, -b],
        [0.0, -e, -d, a],
    ])


def sylvester_det(s: SylvesterCoeffs) -> float:
    a, b, c, d, e = s.a, s.b, s.c, s.d, s.e
    return (b * d - a * a) ** 2 - 2.0 * c * e * (a * a + b * d - 0.5 * c * e)


def sylvester_inverse(s: SylvesterCoeffs) -> np.ndarray:
    a, b, c, d, e = s.a, s.b, s.c, s.d, s.e
    det = sylvester_det(s)
    norm = np.linalg.norm(sylvester_matrix(s))
    if abs(det) <= 1e-14 * norm**4:
        raise SingularSystem(f"determinant {det:.3e} below threshold")
    a2, bd, ce = a * a, b * d, c * e
    adj = np.array([
        [a * (a2 - bd - ce), b * (-a2 + bd - ce), -c * (a2 + bd - ce), -2 * a * b * c],
        [d * (-a2 + bd - ce), a * (a2 - bd - ce), 2 * a * c * d, -c * (-a2 - bd + ce)],
        [-e * (a2 + bd - ce), 2 * a * b * e, a * (a2 - bd - ce), b * (a2 - bd + ce)],
        [-2 * a * d * e, -e * (-a2 - bd + ce), d * (a2 - bd + ce), a * (a2 - bd - ce)],
    ])
    return adj / det


def solve_homological(D1: np.ndarray, D0: np.ndarray, F: np.ndarray) -> np.ndarray:
    """Solve D1 X - X D0 = -J2 F for the structured unknown
    X = [[x11, i x12], [i x21, x22]] (real x_ij), via the equivalent real 4x4
    system with closed-form inverse."""
    E = -J2 @ np.asarray(D1, dtype=complex)
    G = -J2 @ np.asarray(D0, dtype=complex)
    s = SylvesterCoeffs.from_blocks(E, G)
    f = np.array([
        -float(F[1, 0].imag),
        float(F[1, 1].real),
        -float(F[0, 0].real),
        float(F[0, 1].imag),
    ])
    x = sylvester_inverse(s) @ f
    return np.array([[x[0], 1j * x[1]], [1j * x[2], x[3]]])


def _expm_series(S: np.ndarray, term_ratio: float = 1e-18) -> np.ndarray:
    out = np.eye(S.shape[0], dtype=complex)
    term = np.eye(S.shape[0], dtype=complex)
    for k in range(1, 200):
        term = term @ S / k
        out = out + term
        if np.linalg.norm(term) <= term_ratio * np.linalg.norm(out):
            return out
    raise NoConvergence("matrix exponential series did not terminate")


@dataclass
class BlockDiagonalization:
    U2: np.ndarray
    S2: np.ndarray
    transform: np.ndarray
    blocks: HamiltonianBlocks4
    iterations: int


def block_diagonalize(blocks: HamiltonianBlocks4, tol: float = 1e-12,
                      max_iter: int = 30) -> BlockDiagonalization:
    """Iterated exp(S)-conjugations removing the coupling block: each sweep
    solves the homological equation for the structured generator and applies
    the exact symplectic conjugation, until the off-diagonal coupling falls
    below tol times the input norm."""
    B = blocks.b_matrix()
    norm0 = max(float(np.linalg.norm(B, 2)), 1e-300)
    transform = np.eye(4, dtype=complex)
    iterations = 0
    while True:
        E, F, G = B[:2, :2], B[:2, 2:], B[2:, 2:]
        if np.linalg.norm(F) <= tol * norm0:
            break
        if iterations >= max_iter:
            raise NoConvergence(
                f"coupling {np.linalg.norm(F):.3e} after {max_iter} sweeps")
        X = solve_homological(J2 @ E, J2 @ G, F)
        M = J2 @ X
        S = J4 @ np.block([[np.zeros((2, 2)), M], [M.conj().T, np.zeros((2, 2))]])
        Y = _expm_series(-S)  # L -> exp(S) L exp(-S) means B -> Y* B Y
        B = Y.conj().T @ B @ Y
        transform = transform @ Y
        iterations += 1
    out = HamiltonianBlocks4(E=B[:2, :2], F=B[:2, 2:], G=B[2:, 2:])
    L = J4 @ B
    return BlockDiagonalization(U2=L[:2, :2], S2=L[2:, 2:],
                                transform=transform, blocks=out,
                                iterations=iterations)


def eigenpair_of_U(U2: np.ndarray) -> tuple[complex, complex]:
    """Eigenvalues of a 2x2 block with identical diagonal entries:
    diag +/- sqrt(product of the off-diagonal entries)."""
    d = 0.5 * (U2[0, 0] + U2[1, 1])
    root = np.sqrt(complex(U2[0, 1] * U2[1, 0]))
    return complex(d + root), complex(d - root)
