"""Dense Fourier truncations of the Bloch-Floquet linearized operators.

Unknowns are two-component periodic functions; the matrix acts on stacked
Fourier coefficients with row/column index  comp * (2K+1) + (k + K)  for
component comp in {0, 1} and mode k in [-K, K].  Matrices are dense complex;
dimensions stay small enough (<= ~1030 at K = 256) that clarity wins over
sparsity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .closed_form import phase_speed
from .profiles import PeriodicProfile
from .stokes import StokesExpansion, coefficient_profiles

HEADER_MAGIC = 3056.0
HEADER_VERSION = 1.0


@dataclass
class TruncatedOperator:
    """A dense truncation of the linearized operator at fixed (kappa, mu, eps)."""

    matrix: np.ndarray
    kappa: float
    mu: float
    eps: float
    K: int

    def __post_init__(self):
        n = 2 * (2 * self.K + 1)
        if self.matrix.shape != (n, n):
            raise ValueError(f"matrix must be {n}x{n} for K={self.K}")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.matrix, 2))


def modes(K: int) -> np.ndarray:
    return np.arange(-K, K + 1)


def convolution_matrix(profile: PeriodicProfile, K: int) -> np.ndarray:
    """Matrix of pointwise multiplication by the profile on modes [-K, K]:
    M[i, j] = c_{k_i - k_j}."""
    size = 2 * K + 1
    M = np.zeros((size, size), dtype=complex)
    for i, ki in enumerate(modes(K)):
        for j, kj in enumerate(modes(K)):
            M[i, j] = profile.coeff(int(ki - kj))
    return M


def multiplier_matrix(symbol, K: int) -> np.ndarray:
    return np.diag(np.array([symbol(float(k)) for k in modes(K)], dtype=complex))


def structure_matrices(K: int) -> tuple[np.ndarray, np.ndarray]:
    """The symplectic form J and the reversibility sign matrix R.

    J swaps components with a sign, J^2 = -Id, J* = -J.  The reversibility
    involution acts as v -> R conj(v) in coefficient space (conjugating the
    coefficients realizes x -> -x plus complex conjugation of the function),
    so (R conj)^2 = Id.
    """
    size = 2 * K + 1
    eye = np.eye(size)
    zero = np.zeros((size, size))
    J = np.block([[zero, eye], [-eye, zero]])
    R = np.block([[eye, zero], [zero, -eye]])
    return J, R


def _inverse_one_plus_derivative(frakp: PeriodicProfile, K: int) -> PeriodicProfile:
    """Coefficients of 1/(1 + frakp'(x)), sampled on a fine grid."""
    n = max(8 * max(frakp.K, K), 64)
    vals = 1.0 / (1.0 + np.real(frakp.derivative().values(n)))
    return PeriodicProfile.from_values(vals, 2 * K)


def sigma_matrix(expansion: StokesExpansion, frakp: PeriodicProfile,
                 mu: float, eps: float, K: int) -> np.ndarray:
    """Truncation of the conjugated curvature operator
    (1/(1+p')) (d/dx + i mu) g_eps (d/dx + i mu) (1/(1+p'))
    with g_eps carried to second order in eps.  Hermitian up to rounding."""
    g_profile = coefficient_profiles(expansion, eps, 2 * K)["g_minus_1"]
    g_profile.coeffs[g_profile.K] += 1.0
    M_g = convolution_matrix(g_profile, K)
    M_h = convolution_matrix(_inverse_one_plus_derivative(frakp, K), K)
    D_mu = multiplier_matrix(lambda k: 1j * (k + mu), K)
    return M_h @ D_mu @ M_g @ D_mu @ M_h


def _transport_matrix(c: float, p: PeriodicProfile | None, K: int) -> np.ndarray:
    M = c * np.eye(2 * K + 1, dtype=complex)
    if p is not None:
        M += convolution_matrix(p, K)
    return M


def _assemble_blocks(kappa: float, c: float, mu: float, eps: float, K: int,
                     p: PeriodicProfile | None, a: PeriodicProfile | None,
                     sigma: np.ndarray):
    size = 2 * K + 1
    D_mu = multiplier_matrix(lambda k: 1j * (k + mu), K)
    M_cp = _transport_matrix(c, p, K)
    A11 = D_mu @ M_cp
    A12 = multiplier_matrix(lambda k: abs(k + mu), K)
    A21 = -np.eye(size, dtype=complex) + kappa * sigma
    if a is not None:
        A21 -= convolution_matrix(a, K)
    A22 = M_cp @ D_mu
    return A11, A12, A21, A22


def assemble_flat(kappa, mu: float, K: int) -> TruncatedOperator:
    """The flat-surface (eps = 0) Fourier multiplier operator: per-mode 2x2
    blocks [[i c (k+mu), |k+mu|], [-1 - kappa (k+mu)^2, i c (k+mu)]]."""
    k = kappa.kappa if hasattr(kappa, "kappa") else float(kappa)
    c = phase_speed(k)
    D_mu = multiplier_matrix(lambda m: 1j * (m + mu), K)
    sigma0 = D_mu @ D_mu
    A11, A12, A21, A22 = _assemble_blocks(k, c, mu, 0.0, K, None, None, sigma0)
    matrix = np.block([[A11, A12], [A21, A22]])
    return TruncatedOperator(matrix, k, mu, 0.0, K)


def assemble(expansion: StokesExpansion, frakp: PeriodicProfile,
             mu: float, eps: float, K: int) -> TruncatedOperator:
    """The full Bloch-Floquet operator with coefficient functions truncated at
    second order in eps (the result is an O(eps^3)-accurate surrogate)."""
    if eps == 0.0:
        return assemble_flat(expansion.kappa, mu, K)
    profs = coefficient_profiles(expansion, eps, K)
    # The speed correction eps^2 c2 is already part of the p coefficient
    # profile (its zero mode), so the transport term uses the linear speed.
    c = expansion.c
    sigma = sigma_matrix(expansion, frakp, mu, eps, K)
    A11, A12, A21, A22 = _assemble_blocks(
        expansion.kappa, c, mu, eps, K, profs["p"], profs["a"], sigma)
    matrix = np.block([[A11, A12], [A21, A22]])
    return TruncatedOperator(matrix, expansion.kappa, mu, eps, K)


def assemble_B(expansion: StokesExpansion, frakp: PeriodicProfile,
               mu: float, eps: float, K: int) -> np.ndarray:
    """The self-adjoint factor with  L = J B.  The lower-right block uses the
    split  |D| + mu (sgn(D) + Pi_0), which agrees with the direct symbol
    |k + mu| for mu in [0, 1/2)."""
    size = 2 * K + 1
    c = expansion.c
    if eps == 0.0:
        p = a = None
        D_mu = multiplier_matrix(lambda m: 1j * (m + mu), K)
        sigma = D_mu @ D_mu
    else:
        profs = coefficient_profiles(expansion, eps, K)
        p, a = profs["p"], profs["a"]
        sigma = sigma_matrix(expansion, frakp, mu, eps, K)
    D_mu = multiplier_matrix(lambda m: 1j * (m + mu), K)
    M_cp = _transport_matrix(c, p, K)

    B11 = np.eye(size, dtype=complex) - expansion.kappa * sigma
    if a is not None:
        B11 += convolution_matrix(a, K)
    B12 = -M_cp @ D_mu
    B21 = D_mu @ M_cp
    sgn_pi0 = multiplier_matrix(lambda k: float(np.sign(k)), K)
    sgn_pi0[K, K] += 1.0  # Pi_0 contributes on the zero mode where sgn(0) = 0
    B22 = multiplier_matrix(lambda k: abs(k), K) + mu * sgn_pi0
    return np.block([[B11, B12], [B21, B22]])


# -- binary dump for cross-implementation diffing ----------------------------

def dump_operator(op: TruncatedOperator, path: str) -> None:
    """Write the matrix as column-major little-endian float64 (re, im) pairs
    behind an 8-value float64 header:
    (magic, version, 2K+1, mu, eps, kappa, layout flag, reserved)."""
    header = np.array(
        [HEADER_MAGIC, HEADER_VERSION, 2 * op.K + 1, op.mu, op.eps, op.kappa, 0.0, 0.0],
        dtype="<f8")
    flat = np.asfortranarray(op.matrix).ravel(order="F")
    body = np.empty(2 * flat.size, dtype="<f8")
    body[0::2] = flat.real
    body[1::2] = flat.imag
    with open(path, "wb") as fh:
        fh.write(header.tobytes())
        fh.write(body.tobytes())


def load_operator(path: str) -> TruncatedOperator:
    with open(path, "rb") as fh:
        raw = fh.read()
    header = np.frombuffer(raw[:64], dtype="<f8")
    if header[0] != HEADER_MAGIC:
        raise ValueError("not a bfspec operator dump")
    size = int(header[2])
    K = (size - 1) // 2
    n = 2 * size
    body = np.frombuffer(raw[64:], dtype="<f8")
    if body.size != 2 * n * n:
        raise ValueError("truncated operator dump")
    flat = body[0::2] + 1j * body[1::2]
    matrix = flat.reshape((n, n), order="F")
    return TruncatedOperator(np.ascontiguousarray(matrix),
                             float(header[5]), float(header[3]), float(header[4]), K)
