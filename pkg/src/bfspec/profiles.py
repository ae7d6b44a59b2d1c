"""Truncated Fourier series on the 2*pi-periodic circle.

Coefficients are stored for modes k in [-K, K] (index k + K).  Products of two
band-limited profiles are formed on an oversampled grid and truncated, which is
exact for the quadratic nonlinearities in play.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np


class Parity(Enum):
    EVEN = "Even"
    ODD = "Odd"
    NONE = "None"


def grid(n: int) -> np.ndarray:
    """Uniform nodes 2*pi*j/n, j = 0..n-1."""
    return 2.0 * np.pi * np.arange(n) / n


@dataclass
class PeriodicProfile:
    """A 2*pi-periodic function stored as Fourier coefficients c_k, |k| <= K,
    with f(x) = sum_k c_k exp(i k x)."""

    coeffs: np.ndarray
    parity: Parity = Parity.NONE

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        if self.coeffs.ndim != 1 or self.coeffs.size % 2 != 1:
            raise ValueError("coeffs must be a 1-d array of odd length 2K+1")

    @property
    def K(self) -> int:
        return (self.coeffs.size - 1) // 2

    def coeff(self, k: int) -> complex:
        if abs(k) > self.K:
            return 0.0 + 0.0j
        return self.coeffs[k + self.K]

    @property
    def modes(self) -> np.ndarray:
        return np.arange(-self.K, self.K + 1)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, K: int, parity: Parity = Parity.NONE) -> "PeriodicProfile":
        return cls(np.zeros(2 * K + 1, dtype=complex), parity)

    @classmethod
    def from_cos_sin(cls, K: int, cos_amps: dict[int, float] | None = None,
                     sin_amps: dict[int, float] | None = None) -> "PeriodicProfile":
        """Real profile sum_j a_j cos(jx) + b_j sin(jx); j = 0 allowed in cos."""
        c = np.zeros(2 * K + 1, dtype=complex)
        for j, a in (cos_amps or {}).items():
            if j == 0:
                c[K] += a
            else:
                c[K + j] += a / 2.0
                c[K - j] += a / 2.0
        for j, b in (sin_amps or {}).items():
            c[K + j] += b / 2.0j
            c[K - j] -= b / 2.0j
        parity = Parity.NONE
        if not sin_amps:
            parity = Parity.EVEN
        elif not cos_amps:
            parity = Parity.ODD
        return cls(c, parity)

    @classmethod
    def from_values(cls, vals: np.ndarray, K: int,
                    parity: Parity = Parity.NONE) -> "PeriodicProfile":
        """Least-aliased truncation of grid samples: FFT then keep |k| <= K."""
        n = vals.size
        if n < 2 * K + 1:
            raise ValueError("grid too coarse for requested truncation")
        spec = np.fft.fft(np.asarray(vals, dtype=complex)) / n
        c = np.zeros(2 * K + 1, dtype=complex)
        for k in range(-K, K + 1):
            c[k + K] = spec[k % n]
        return cls(c, parity)

    # -- evaluation ---------------------------------------------------------

    def values(self, n: int) -> np.ndarray:
        """Samples on the uniform n-point grid (exact trigonometric evaluation)."""
        if n < self.coeffs.size:
            return self.eval_at(grid(n))
        spec = np.zeros(n, dtype=complex)
        for k in range(-self.K, self.K + 1):
            spec[k % n] = self.coeff(k)
        return np.fft.ifft(spec) * n

    def eval_at(self, x: np.ndarray) -> np.ndarray:
        """Exact evaluation at arbitrary points (dense exponential sum)."""
        x = np.asarray(x, dtype=float)
        return np.exp(1j * np.outer(x, self.modes)) @ self.coeffs

    # -- calculus -----------------------------------------------------------

    def derivative(self, order: int = 1) -> "PeriodicProfile":
        factor = (1j * self.modes) ** order
        parity = self.parity
        if order % 2 == 1 and parity is not Parity.NONE:
            parity = Parity.ODD if parity is Parity.EVEN else Parity.EVEN
        return PeriodicProfile(self.coeffs * factor, parity)

    def hilbert(self) -> "PeriodicProfile":
        """Hilbert transform: exp(ijx) -> -i sign(j) exp(ijx), zero mode killed."""
        factor = -1j * np.sign(self.modes)
        parity = self.parity
        if parity is not Parity.NONE:
            parity = Parity.ODD if parity is Parity.EVEN else Parity.EVEN
        return PeriodicProfile(self.coeffs * factor, parity)

    def multiplier(self, symbol) -> "PeriodicProfile":
        """Apply a Fourier multiplier given as a function of the mode index."""
        factor = np.array([symbol(int(k)) for k in self.modes], dtype=complex)
        return PeriodicProfile(self.coeffs * factor)

    # -- algebra ------------------------------------------------------------

    def truncate(self, K: int) -> "PeriodicProfile":
        c = np.zeros(2 * K + 1, dtype=complex)
        lo = min(K, self.K)
        c[K - lo:K + lo + 1] = self.coeffs[self.K - lo:self.K + lo + 1]
        return PeriodicProfile(c, self.parity)

    def __add__(self, other: "PeriodicProfile") -> "PeriodicProfile":
        K = max(self.K, other.K)
        a, b = self.truncate(K), other.truncate(K)
        parity = self.parity if self.parity is other.parity else Parity.NONE
        return PeriodicProfile(a.coeffs + b.coeffs, parity)

    def __sub__(self, other: "PeriodicProfile") -> "PeriodicProfile":
        return self + (-1.0) * other

    def __rmul__(self, scalar) -> "PeriodicProfile":
        return PeriodicProfile(scalar * self.coeffs, self.parity)

    def product(self, other: "PeriodicProfile", K: int | None = None) -> "PeriodicProfile":
        """Pointwise product via an oversampled grid (anti-aliased truncation)."""
        if K is None:
            K = max(self.K, other.K)
        n = 4 * max(self.K + other.K, K, 1)
        vals = self.values(n) * other.values(n)
        parity = Parity.NONE
        if self.parity is not Parity.NONE and other.parity is not Parity.NONE:
            parity = Parity.EVEN if self.parity is other.parity else Parity.ODD
        return PeriodicProfile.from_values(vals, K, parity)

    # -- diagnostics --------------------------------------------------------

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def sup_norm(self, n: int | None = None) -> float:
        n = n or max(8 * self.K, 32)
        return float(np.max(np.abs(self.values(n))))

    def reality_defect(self) -> float:
        """||c_{-k} - conj(c_k)|| for a real-valued profile."""
        return float(np.linalg.norm(self.coeffs - np.conj(self.coeffs[::-1])))

    def parity_defect(self) -> float:
        """Deviation from the tagged parity, relative to nothing (absolute).

        Even: c_{-k} = c_k and coefficients real (for real profiles);
        odd: c_{-k} = -c_k and c_0 = 0.
        """
        if self.parity is Parity.EVEN:
            return float(np.linalg.norm(self.coeffs - self.coeffs[::-1]))
        if self.parity is Parity.ODD:
            return float(np.linalg.norm(self.coeffs + self.coeffs[::-1]))
        return 0.0

    def cos_coefficient(self, j: int) -> float:
        """Amplitude of cos(jx) in a real profile."""
        if j == 0:
            return float(np.real(self.coeff(0)))
        return float(np.real(self.coeff(j) + self.coeff(-j)))

    def sin_coefficient(self, j: int) -> float:
        """Amplitude of sin(jx) in a real profile."""
        return float(np.real(1j * (self.coeff(j) - self.coeff(-j))))
