"""Closed-form stability coefficients of small gravity-capillary Stokes waves.

Everything here is an exact scalar function of the surface-tension coefficient
``kappa`` (gravity normalized to 1), the Floquet exponent ``mu`` and the wave
amplitude ``eps``.  Remainder terms of the underlying asymptotic expansions are
dropped throughout; each function documents the order of the neglected terms so
callers can budget tolerances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import NotUnstable, ResonantKappa, SingularKappa

#: kappa at which e22 (and the Whitham-Benjamin function) change sign.
KAPPA_CRITICAL = 2.0 * math.sqrt(3.0) / 3.0 - 1.0

DEFAULT_GUARD = 1e-6

#: largest denominator n tested when checking proximity to the resonant set {1/n}.
#: The quadratic-order expansions used throughout are only degraded by the
#: low-order resonances 1/2 and 1/3; higher 1/n values (1/5, 1/20, ...) are
#: legitimate operating points for every quantity this package computes, so
#: they are not guarded by default.  Raise this to guard deeper resonances.
DEFAULT_RESONANCE_ORDER = 3

N_RES_CAP = 10**6


class RegionLabel(Enum):
    UNSTABLE = "Unstable"
    STABLE = "Stable"
    CRITICAL = "Critical"
    RESONANT = "Resonant"
    SINGULAR = "Singular"


def _resonant_distance(kappa: float, guard: float,
                       max_order: int = DEFAULT_RESONANCE_ORDER) -> float:
    """Distance from kappa to the nearest guarded resonant value 1/n,
    2 <= n <= max_order (capped at N_RES_CAP)."""
    if kappa <= 0.0:
        return math.inf
    best = math.inf
    for n in range(2, min(max_order, N_RES_CAP) + 1):
        best = min(best, abs(kappa - 1.0 / n))
    return best


def classify(kappa: float, guard: float = DEFAULT_GUARD) -> RegionLabel:
    """Classify kappa into the stability atlas.

    Degenerate proximities (singular 1/2, critical threshold, resonant set)
    take precedence over the open unstable/stable regions, so sweeps never
    abort on a bad grid point.
    """
    if kappa < 0.0:
        raise ValueError(f"kappa must be nonnegative, got {kappa}")
    if abs(kappa - 0.5) <= guard:
        return RegionLabel.SINGULAR
    if abs(kappa - KAPPA_CRITICAL) <= guard:
        return RegionLabel.CRITICAL
    if _resonant_distance(kappa, guard) <= guard:
        return RegionLabel.RESONANT
    if kappa < KAPPA_CRITICAL or kappa > 0.5:
        return RegionLabel.UNSTABLE
    return RegionLabel.STABLE


@dataclass(frozen=True)
class CapillaryParam:
    """Validated surface-tension coefficient.

    Raises SingularKappa / ResonantKappa when kappa sits within ``guard`` of
    1/2 or of a resonant value 1/n.
    """

    kappa: float
    guard: float = DEFAULT_GUARD

    def __post_init__(self):
        if self.kappa < 0.0:
            raise ValueError(f"kappa must be nonnegative, got {self.kappa}")
        if abs(self.kappa - 0.5) <= self.guard:
            raise SingularKappa(f"kappa={self.kappa} within guard of 1/2")
        if _resonant_distance(self.kappa, self.guard) <= self.guard:
            raise ResonantKappa(f"kappa={self.kappa} within guard of a resonant value 1/n")

    @property
    def region(self) -> RegionLabel:
        return classify(self.kappa, self.guard)


def _as_kappa(kappa) -> float:
    return kappa.kappa if isinstance(kappa, CapillaryParam) else float(kappa)


def phase_speed(kappa) -> float:
    """Linear phase speed sqrt(1 + kappa) of the 2*pi-periodic carrier."""
    k = _as_kappa(kappa)
    return math.sqrt(1.0 + k)


def _check_not_singular(k: float, guard: float = DEFAULT_GUARD):
    if abs(k - 0.5) <= guard:
        raise SingularKappa(f"kappa={k} within guard of the pole at 1/2")


def coeffs_e(kappa, guard: float = DEFAULT_GUARD) -> tuple[float, float, float]:
    """The coefficient triple (e11, e22, e12).

    e11 has a pole at kappa = 1/2; e22 vanishes at the critical kappa.
    """
    k = _as_kappa(kappa)
    _check_not_singular(k, guard)
    c = math.sqrt(1.0 + k)
    e11 = (2.0 * k * k + k + 8.0) / (8.0 * (1.0 - 2.0 * k) * c)
    e22 = (-3.0 * k * k - 6.0 * k + 1.0) / c**3
    e12 = (1.0 + 3.0 * k) / c
    return e11, e22, e12


def whitham_benjamin(kappa, guard: float = DEFAULT_GUARD) -> float:
    """Whitham-Benjamin function: its sign decides modulational instability.

    Positive on the unstable region, negative on the stable one; pole at
    kappa = 1/2.  Identically equal to e11 * e22.
    """
    k = _as_kappa(kappa)
    _check_not_singular(k, guard)
    num = 6.0 * k**4 + 15.0 * k**3 + 28.0 * k**2 + 47.0 * k - 8.0
    den = 8.0 * (2.0 * k - 1.0) * (k + 1.0) ** 2
    return num / den


def breve_c(kappa) -> float:
    """2*c_kappa - e12 = (1 - kappa)/c_kappa: twice the imaginary drift rate
    of the unstable eigenvalue pair.  Vanishes at kappa = 1 where the
    figure-eight flattens onto the real axis (a geometric degeneracy, not an
    error)."""
    k = _as_kappa(kappa)
    c = math.sqrt(1.0 + k)
    return (1.0 - k) / c


def mu_bar_leading(kappa, eps: float, guard: float = DEFAULT_GUARD) -> float:
    """Leading-order instability bandwidth eps * sqrt(8 e11 / e22).

    The (1 + r(eps)) correction factor is dropped; the result is accurate to
    a relative O(eps).
    """
    k = _as_kappa(kappa)
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    if classify(k, guard) is not RegionLabel.UNSTABLE:
        raise NotUnstable(f"kappa={k} is not in the unstable region")
    e11, e22, _ = coeffs_e(k, guard)
    ratio = 8.0 * e11 / e22
    if ratio <= 0.0:
        raise NotUnstable(f"8*e11/e22 = {ratio} <= 0 at kappa={k}")
    return eps * math.sqrt(ratio)


def delta_bf_leading(kappa, mu: float, eps: float, guard: float = DEFAULT_GUARD) -> float:
    """Leading-order Benjamin-Feir discriminant 8*e_WB*eps^2 - e22^2*mu^2.

    The remainders r1(eps^3, mu eps^4) and r1''(eps, mu) are dropped.
    """
    k = _as_kappa(kappa)
    e_wb = whitham_benjamin(k, guard)
    _, e22, _ = coeffs_e(k, guard)
    return 8.0 * e_wb * eps**2 - e22**2 * mu**2


class SplitRegime(Enum):
    REAL_SPLIT = "RealSplit"
    COLLISION = "Collision"
    IMAGINARY_SPLIT = "ImaginarySplit"


@dataclass(frozen=True)
class LeadingEigenPair:
    value_plus: complex
    value_minus: complex
    regime: SplitRegime


def lambda1_leading(kappa, mu: float, eps: float,
                    guard: float = DEFAULT_GUARD) -> LeadingEigenPair:
    """Leading-order unstable eigenvalue pair lambda_1^{+-}(mu, eps).

    Shared imaginary center i*(breve_c/2)*mu; splitting (mu/8)*sqrt(Delta_BF),
    real below the collision, imaginary above.  Remainder terms of the exact
    expansion (orders mu*eps^2, mu^2*eps, mu^3 in the center and relative
    O(eps, mu) in the splitting) are dropped.
    """
    k = _as_kappa(kappa)
    delta = delta_bf_leading(k, mu, eps, guard)
    center = 1j * 0.5 * breve_c(k) * mu
    if delta > 0.0:
        split = 0.125 * mu * math.sqrt(delta)
        return LeadingEigenPair(center + split, center - split, SplitRegime.REAL_SPLIT)
    if delta == 0.0:
        return LeadingEigenPair(center, center, SplitRegime.COLLISION)
    split = 1j * 0.125 * mu * math.sqrt(-delta)
    return LeadingEigenPair(center + split, center - split, SplitRegime.IMAGINARY_SPLIT)


def lambda0_leading(kappa, mu: float) -> tuple[complex, complex]:
    """Leading-order pair of the larger purely imaginary eigenvalues
    i*mu*c_kappa -+ i*sqrt(mu); remainders dropped.  Both returns have real
    part exactly zero."""
    k = _as_kappa(kappa)
    if mu < 0.0:
        raise ValueError("mu must be nonnegative")
    c = phase_speed(k)
    root = math.sqrt(mu)
    return (1j * (mu * c - root), 1j * (mu * c + root))


def flat_eigenvalue(kappa, k_mode: int, sign: int, mu: float) -> complex:
    """Eigenvalue lambda_k^{sign} of the flat-surface Bloch operator.

    i*(c_kappa*(sign*k + mu) - sign*sqrt((1 + kappa*(k + sign*mu)^2)*|k + sign*mu|));
    purely imaginary by construction (real part is exactly the float 0.0).
    """
    kap = _as_kappa(kappa)
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    c = math.sqrt(1.0 + kap)
    shifted = k_mode + sign * mu
    disp = math.sqrt((1.0 + kap * shifted * shifted) * abs(shifted))
    return 1j * (c * (sign * k_mode + mu) - sign * disp)


def flat_quadruple(kappa, mu: float) -> dict[str, complex]:
    """The four near-zero flat eigenvalues, keyed by branch label."""
    return {
        "lambda1_plus": flat_eigenvalue(kappa, 1, +1, mu),
        "lambda1_minus": flat_eigenvalue(kappa, 1, -1, mu),
        "lambda0_plus": flat_eigenvalue(kappa, 0, +1, mu),
        "lambda0_minus": flat_eigenvalue(kappa, 0, -1, mu),
    }
