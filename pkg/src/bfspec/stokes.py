"""Second-order expansion of deep-water gravity-capillary Stokes waves.

Holds every expansion coefficient of the wave, the speed, the conformal shift
and the flattened-operator symbols, a Picard solver for the conformal shift
fixed point, the quadratic Taylor truncation of the Dirichlet-Neumann operator
and a residual check of the traveling-wave equations.

All closed forms are carried to second order in the amplitude eps; downstream
accuracy claims are O(eps^3).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .closed_form import CapillaryParam, phase_speed
from .errors import NoConvergence
from .profiles import Parity, PeriodicProfile, grid


@dataclass(frozen=True)
class StokesExpansion:
    """All second-order expansion coefficients at a fixed kappa.

    Naming: ``x2_0`` / ``x2_2`` are the constant and cos(2x)/sin(2x) amplitudes
    of the second-order term of x, ``x1_1`` the cos(x)/sin(x) amplitude of the
    first-order term.
    """

    kappa: float
    c: float            # linear phase speed
    # wave and speed
    eta2_2: float
    psi2_2: float
    c2: float
    # flattened transport coefficient p_eps
    p1_1: float
    p2_0: float
    p2_2: float
    # flattened potential coefficient a_eps
    a1_1: float
    a2_0: float
    a2_2: float
    # conformal metric coefficient g_eps
    g1_1: float
    g2_0: float
    g2_2: float
    # expansion of the conjugated second-derivative operator:
    # Sigma_j = d_j d^2/dx^2 + e_j d/dx + h_j
    d1_1: float
    e1_1: float
    h1_1: float
    d2_0: float
    d2_2: float
    e2_2: float
    h2_0: float
    h2_2: float
    # conformal shift frak p
    frakp1_1: float
    frakp2_2: float


def expand(kappa) -> StokesExpansion:
    """Evaluate every printed closed-form coefficient at kappa.

    Validation (non-resonant, non-singular kappa) happens through
    CapillaryParam.
    """
    param = kappa if isinstance(kappa, CapillaryParam) else CapillaryParam(float(kappa))
    k = param.kappa
    c = phase_speed(k)
    den = 1.0 - 2.0 * k
    return StokesExpansion(
        kappa=k,
        c=c,
        eta2_2=c**2 / (2.0 * den),
        psi2_2=c**3 / (2.0 * den),
        c2=(2.0 * k * k + k + 8.0) / (16.0 * c * den),
        p1_1=-2.0 * c,
        p2_0=(-30.0 * k * k - 15.0 * k + 24.0) / (16.0 * c * den),
        p2_2=-2.0 * c**3 / den,
        a1_1=-(2.0 + k),
        a2_0=(4.0 + 3.0 * k) / 2.0,
        a2_2=-(10.0 * k * k + 11.0 * k + 4.0) / (2.0 * den),
        g1_1=-1.0,
        g2_0=-0.25,
        g2_2=-(6.0 * k + 3.0) / (4.0 * den),
        d1_1=-3.0,
        e1_1=3.0,
        h1_1=1.0,
        d2_0=2.25,
        d2_2=-(9.0 + 18.0 * k) / (4.0 * den),
        e2_2=(18.0 * k + 9.0) / (2.0 * den),
        h2_0=-0.5,
        h2_2=(9.0 + 6.0 * k) / (2.0 * den),
        frakp1_1=1.0,
        frakp2_2=(2.0 - k) / (2.0 * den),
    )


# -- profile constructors ---------------------------------------------------

def wave_profiles(expansion: StokesExpansion, eps: float,
                  K: int) -> tuple[PeriodicProfile, PeriodicProfile, float]:
    """Surface elevation (even), surface potential trace (odd) and wave speed
    to second order in eps."""
    if K < 2:
        raise ValueError("K must be at least 2")
    eta = PeriodicProfile.from_cos_sin(
        K, cos_amps={1: eps, 2: eps**2 * expansion.eta2_2})
    psi = PeriodicProfile.from_cos_sin(
        K, sin_amps={1: eps * expansion.c, 2: eps**2 * expansion.psi2_2})
    c = expansion.c + eps**2 * expansion.c2
    return eta, psi, c


def coefficient_profiles(expansion: StokesExpansion, eps: float,
                         K: int) -> dict[str, PeriodicProfile]:
    """The even coefficient functions p_eps, a_eps, g_eps - 1 and the odd
    conformal shift, each truncated at second order."""
    e = expansion
    p = PeriodicProfile.from_cos_sin(
        K, cos_amps={0: eps**2 * e.p2_0, 1: eps * e.p1_1, 2: eps**2 * e.p2_2})
    a = PeriodicProfile.from_cos_sin(
        K, cos_amps={0: eps**2 * e.a2_0, 1: eps * e.a1_1, 2: eps**2 * e.a2_2})
    g = PeriodicProfile.from_cos_sin(
        K, cos_amps={0: eps**2 * e.g2_0, 1: eps * e.g1_1, 2: eps**2 * e.g2_2})
    frakp = PeriodicProfile.from_cos_sin(
        K, sin_amps={1: eps * e.frakp1_1, 2: eps**2 * e.frakp2_2})
    return {"p": p, "a": a, "g_minus_1": g, "frakp": frakp}


# -- conformal shift fixed point --------------------------------------------

def solve_frakp(eta: PeriodicProfile, tol: float = 1e-12,
                max_iter: int = 200) -> PeriodicProfile:
    """Solve the conformal-shift fixed point  p = H[eta(x + p(x))]  by Picard
    iteration on a uniform grid, with exact trigonometric interpolation for
    the composition.

    Contraction needs a small wave slope (eps <= 0.1 as a guideline).
    """
    K = max(eta.K, 4)
    n = max(8 * K, 64)
    x = grid(n)
    p_vals = np.zeros(n)
    K_out = n // 3
    for _ in range(max_iter):
        composed = np.real(eta.eval_at(x + p_vals))
        transformed = PeriodicProfile.from_values(composed, K_out).hilbert()
        new_vals = np.real(transformed.values(n))
        defect = float(np.max(np.abs(new_vals - p_vals)))
        p_vals = new_vals
        if defect <= tol:
            return PeriodicProfile.from_values(p_vals, K_out, Parity.ODD)
    raise NoConvergence(
        f"conformal shift fixed point did not reach tol={tol} in {max_iter} iterations")


# -- Dirichlet-Neumann Taylor truncation ------------------------------------

def _abs_d(f: PeriodicProfile) -> PeriodicProfile:
    return f.multiplier(abs)


def _d(f: PeriodicProfile) -> PeriodicProfile:
    return f.multiplier(lambda k: k)


def _d2(f: PeriodicProfile) -> PeriodicProfile:
    return f.multiplier(lambda k: k * k)


def dirichlet_neumann_taylor(eta: PeriodicProfile, psi: PeriodicProfile,
                             order: int, K: int | None = None) -> PeriodicProfile:
    """(G0 + G1(eta) + G2(eta)) psi truncated at the requested order.

    G0 = |D|,  G1 = D eta D - |D| eta |D|,
    G2 = -(1/2)(|D| eta^2 D^2 + D^2 eta^2 |D| - 2 |D| eta |D| eta |D|),
    with pointwise products computed on an oversampled grid.
    """
    if order not in (0, 1, 2):
        raise ValueError("order must be 0, 1 or 2")
    if K is None:
        K = max(eta.K, psi.K)
    out = _abs_d(psi).truncate(K)
    if order >= 1:
        g1 = _d(eta.product(_d(psi), K)) - _abs_d(eta.product(_abs_d(psi), K))
        out = out + g1
    if order >= 2:
        eta_sq = eta.product(eta, K)
        term_a = _abs_d(eta_sq.product(_d2(psi), K))
        term_b = _d2(eta_sq.product(_abs_d(psi), K))
        inner = _abs_d(eta.product(_abs_d(psi), K))
        term_c = _abs_d(eta.product(inner, K))
        out = out + (-0.5) * (term_a + term_b) + term_c
    return out


# -- residual of the traveling-wave system ----------------------------------

def stokes_residual(kappa, eps: float, K: int = 16) -> tuple[float, float]:
    """Sup-norm residuals of the two traveling-wave equations on the
    second-order expansion profiles, with the Dirichlet-Neumann operator
    truncated at quadratic order.  Both residuals are O(eps^3)."""
    if K < 8:
        raise ValueError("K must be at least 8")
    expansion = expand(kappa)
    k = expansion.kappa
    eta, psi, c = wave_profiles(expansion, eps, K)
    n = 8 * K
    x = grid(n)

    eta_x = np.real(eta.derivative().values(n))
    psi_x = np.real(psi.derivative().values(n))
    eta_vals = np.real(eta.values(n))

    # dynamic boundary condition (with G(eta)psi already replaced by -c eta_x)
    capillary_arg = eta_x / np.sqrt(1.0 + eta_x**2)
    capillary = np.real(
        PeriodicProfile.from_values(capillary_arg, 2 * K).derivative().values(n))
    res1_vals = (-c * psi_x + eta_vals + 0.5 * psi_x**2
                 - eta_x**2 * (c - psi_x) ** 2 / (2.0 * (1.0 + eta_x**2))
                 - k * capillary)

    # kinematic boundary condition
    g_psi = np.real(dirichlet_neumann_taylor(eta, psi, order=2, K=2 * K).values(n))
    res2_vals = c * eta_x + g_psi

    return float(np.max(np.abs(res1_vals))), float(np.max(np.abs(res2_vals)))
