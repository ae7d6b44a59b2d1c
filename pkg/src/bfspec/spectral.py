"""Eigen-decomposition, near-zero eigenvalue tracking, Riesz projectors, and
figure-eight tracing for the truncated Bloch-Floquet operators."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment, minimize_scalar

from . import closed_form as cf
from .errors import (ContourTooTight, GapFailure, NotUnstable, RankFailure,
                     StructureViolation)
from .operators import TruncatedOperator, assemble, structure_matrices
from .stokes import StokesExpansion, coefficient_profiles, expand

MU_LABEL_FLOOR = 1e-4


@dataclass
class SpectrumResult:
    """Full spectrum of a truncated operator, sorted by ascending modulus."""

    eigenvalues: np.ndarray
    vectors: np.ndarray
    residuals: np.ndarray
    op: TruncatedOperator

    @property
    def moduli(self) -> np.ndarray:
        return np.abs(self.eigenvalues)


def eig(op: TruncatedOperator) -> SpectrumResult:
    """Dense non-Hermitian eigendecomposition with per-pair relative residuals."""
    vals, vecs = np.linalg.eig(op.matrix)
    order = np.argsort(np.abs(vals), kind="stable")
    vals, vecs = vals[order], vecs[:, order]
    norm = op.norm()
    res = np.linalg.norm(op.matrix @ vecs - vecs * vals, axis=0) / max(norm, 1.0)
    return SpectrumResult(vals, vecs, res, op)


@dataclass
class Quadruple:
    """The four eigenvalues closest to the origin, with asymptotic labels."""

    lambda1_plus: complex
    lambda1_minus: complex
    lambda0_plus: complex
    lambda0_minus: complex
    labeled: bool = True
    vectors: np.ndarray | None = None

    def as_dict(self) -> dict[str, complex]:
        return {
            "lambda1_plus": self.lambda1_plus,
            "lambda1_minus": self.lambda1_minus,
            "lambda0_plus": self.lambda0_plus,
            "lambda0_minus": self.lambda0_minus,
        }

    def values(self) -> np.ndarray:
        return np.array([self.lambda1_plus, self.lambda1_minus,
                         self.lambda0_plus, self.lambda0_minus])


def _split_lambda1_pair(pair):
    """Order a near-origin pair as (plus, minus): by real part when it splits,
    by imaginary part descending at or beyond the collision."""
    a, b = pair
    scale = max(abs(a), abs(b), 1e-300)
    if abs(a.real - b.real) > 1e-8 * scale:
        return (a, b) if a.real > b.real else (b, a)
    if abs(a.imag - b.imag) > 1e-12 * scale:
        return (a, b) if a.imag > b.imag else (b, a)
    return (a, b) if a.real >= b.real else (b, a)


def near_zero_quadruple(spec: SpectrumResult, kappa: float, mu: float,
                        gap_factor: float = 3.0) -> Quadruple:
    """Select and label the four smallest-modulus eigenvalues.

    Requires the modulus gap between the fourth and fifth eigenvalue to exceed
    ``gap_factor``; loosen it (or track by continuity) outside that regime.
    """
    if spec.eigenvalues.size < 5:
        raise GapFailure("spectrum too small to isolate a quadruple")
    vals = spec.eigenvalues
    m3, m4 = abs(vals[3]), abs(vals[4])
    if m4 < gap_factor * m3:
        raise GapFailure(
            f"near-zero separation {m4:.3e}/{m3:.3e} below factor {gap_factor}")
    quad = vals[:4]
    vecs = spec.vectors[:, :4]
    if mu < MU_LABEL_FLOOR:
        q = sorted(quad, key=lambda z: (-z.imag, -z.real))
        return Quadruple(q[0], q[1], q[2], q[3], labeled=False, vectors=vecs)

    c = cf.phase_speed(kappa)
    p0_plus, p0_minus = cf.lambda0_leading(kappa, mu)
    # the two eigenvalues nearest the lambda0 predictions take those labels
    cost = np.abs(quad[:, None] - np.array([p0_plus, p0_minus])[None, :])
    best = None
    for i in range(4):
        for j in range(4):
            if i == j:
                continue
            w = cost[i, 0] + cost[j, 1]
            if best is None or w < best[0]:
                best = (w, i, j)
    _, i0p, i0m = best
    rest = [k for k in range(4) if k not in (i0p, i0m)]
    l1p, l1m = _split_lambda1_pair((quad[rest[0]], quad[rest[1]]))
    return Quadruple(l1p, l1m, quad[i0p], quad[i0m], vectors=vecs)


def quadruple_by_prediction(spec: SpectrumResult, predictions: dict,
                            n_candidates: int = 12) -> Quadruple:
    """Match eigenvalues to predicted quadruple values by optimal assignment;
    used for continuity tracking where the modulus-gap precondition fails."""
    labels = ["lambda1_plus", "lambda1_minus", "lambda0_plus", "lambda0_minus"]
    preds = np.array([predictions[lbl] for lbl in labels])
    n = min(n_candidates, spec.eigenvalues.size)
    cand = spec.eigenvalues[:n]
    cost = np.abs(cand[:, None] - preds[None, :])
    rows, cols = linear_sum_assignment(cost)
    chosen = {labels[c]: cand[r] for r, c in zip(rows, cols)}
    l1p, l1m = _split_lambda1_pair((chosen["lambda1_plus"], chosen["lambda1_minus"]))
    return Quadruple(l1p, l1m, chosen["lambda0_plus"], chosen["lambda0_minus"])


# -- Riesz projector and compressions ----------------------------------------

def contour_radius(spec: SpectrumResult) -> float:
    """Geometric mean of the largest quadruple modulus and the smallest
    excluded modulus, floored away from zero for the degenerate origin case."""
    m3 = abs(spec.eigenvalues[3])
    m4 = abs(spec.eigenvalues[4])
    return float(np.sqrt(max(m3, 0.04 * m4) * m4))


def riesz_projector(op: TruncatedOperator, radius: float, n_nodes: int = 64,
                    eigenvalues: np.ndarray | None = None) -> np.ndarray:
    """Spectral projector onto the part of the spectrum inside |lambda| = radius,
    by trapezoidal quadrature of the resolvent over the circle."""
    if eigenvalues is not None:
        margin = np.min(np.abs(np.abs(eigenvalues) - radius))
        if margin < 0.1 * radius:
            raise ContourTooTight(
                f"eigenvalue within {margin:.3e} of contour radius {radius:.3e}")
    n = op.matrix.shape[0]
    eye = np.eye(n, dtype=complex)
    theta = 2.0 * np.pi * np.arange(n_nodes) / n_nodes
    P = np.zeros((n, n), dtype=complex)
    for t in theta:
        lam = radius * np.exp(1j * t)
        P += np.exp(1j * t) * np.linalg.solve(lam * eye - op.matrix, eye)
    return (radius / n_nodes) * P


def compress(op: TruncatedOperator, P: np.ndarray, rank: int = 4) -> np.ndarray:
    """Orthonormal compression of the operator onto range(P) (rank-revealing
    SVD basis); spectrum equals the enclosed eigenvalue group."""
    U, s, _ = np.linalg.svd(P)
    numerical_rank = int(np.sum(s > 0.5))
    if numerical_rank != rank:
        raise RankFailure(f"projector rank {numerical_rank}, expected {rank}")
    V = U[:, :rank]
    return V.conj().T @ op.matrix @ V


# -- symplectic (Kato) compression -------------------------------------------

def flat_symplectic_basis(kappa: float, K: int) -> np.ndarray:
    """Columns (f1+, f1-, f0+, f0-) spanning the flat kernel at mu = eps = 0,
    normalized so the symplectic pairings are (J f_k^-, f_k^+) = 1."""
    c = cf.phase_speed(kappa)
    size = 2 * K + 1
    n = 2 * size

    def vec(comp0: dict, comp1: dict) -> np.ndarray:
        v = np.zeros(n, dtype=complex)
        for k, val in comp0.items():
            v[k + K] = val
        for k, val in comp1.items():
            v[size + k + K] = val
        return v

    rc = np.sqrt(c)
    cos_c = {1: 0.5, -1: 0.5}
    sin_c = {1: -0.5j, -1: 0.5j}
    f1p = vec({k: v / rc for k, v in cos_c.items()}, {k: rc * v for k, v in sin_c.items()})
    f1m = vec({k: -v / rc for k, v in sin_c.items()}, {k: rc * v for k, v in cos_c.items()})
    f0p = vec({0: 1.0}, {})
    f0m = vec({}, {0: 1.0})
    return np.column_stack([f1p, f1m, f0p, f0m])


def _pairing(J: np.ndarray, u: np.ndarray, v: np.ndarray) -> complex:
    """(J u, v) with the coefficient inner product (x, y) = sum x_k conj(y_k)."""
    return complex(np.vdot(v, J @ u))


def _involution(R: np.ndarray, v: np.ndarray) -> np.ndarray:
    """The conjugation-reflection involution acting on coefficient vectors."""
    return R @ np.conj(v)


def _pair_from_conjugate(J, R, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Symplectic reversible pair spanning the invariant plane of a
    {lambda, -conj(lambda)} eigenvalue pair, from one of its eigenvectors."""
    s1 = _pairing(J, v, _involution(R, v))
    alpha = np.exp(-0.5j * np.angle(s1)) / np.sqrt(2.0 * abs(s1))
    v = alpha * v
    rv = _involution(R, v)
    return v + rv, v - rv


def _pair_from_imaginary(J, R, va: np.ndarray, vb: np.ndarray):
    """Symplectic reversible pair from two self-paired purely imaginary
    eigendirections of opposite Krein signature."""
    out = []
    signs = []
    for v in (va, vb):
        rv = _involution(R, v)
        phase = np.vdot(v, rv)
        u = np.exp(0.5j * np.angle(phase)) * v
        u = 0.5 * (u + _involution(R, u))
        krein = np.real(_pairing(J, 1j * u, u))
        if abs(krein) < 1e-300:
            raise StructureViolation("degenerate Krein pairing on eigendirection")
        out.append(u / np.sqrt(abs(krein)))
        signs.append(np.sign(krein))
    if signs[0] * signs[1] >= 0:
        raise StructureViolation("imaginary eigendirections share Krein signature")
    ua, ub = out if signs[0] > 0 else out[::-1]
    return (ua + ub) / np.sqrt(2.0), 1j * (ua - ub) / np.sqrt(2.0)


def detect_pairs(values: np.ndarray, scale: float) -> tuple[tuple[int, int], tuple[int, int]]:
    """Group four near-zero eigenvalues into two symplectic pairs: conjugate
    pairs (lambda, -conj lambda) with nonzero real part first, the remaining
    purely imaginary ones matched to minimize within-pair distance."""
    tol = 1e-8 * max(scale, 1e-300)
    idx = list(range(4))
    conj_pairs = []
    used = set()
    for i in idx:
        for j in idx:
            if j <= i or i in used or j in used:
                continue
            if abs(values[i].real) > tol and abs(values[i] + np.conj(values[j])) < 1e-6 * scale:
                conj_pairs.append((i, j))
                used.update((i, j))
    rest = [i for i in idx if i not in used]
    if len(conj_pairs) == 2:
        return conj_pairs[0], conj_pairs[1]
    if len(conj_pairs) == 1:
        return conj_pairs[0], (rest[0], rest[1])
    # all imaginary: two pairings possible; prefer partners close in value
    a, b, c, d = rest
    if abs(values[a] - values[b]) + abs(values[c] - values[d]) <= \
       abs(values[a] - values[c]) + abs(values[b] - values[d]):
        return (a, b), (c, d)
    return (a, c), (b, d)


def symplectic_subspace_basis(op: TruncatedOperator, spec: SpectrumResult,
                              indices=None) -> np.ndarray:
    """Symplectic, reversibility-adapted basis (h1+, h1-, h0+, h0-) of the
    invariant subspace spanned by four near-zero eigenvectors.  The first pair
    is the one exhibiting (or continuing) the real-part split."""
    J, R = structure_matrices(op.K)
    if indices is None:
        indices = list(range(4))
    vals = spec.eigenvalues[indices]
    scale = max(float(np.max(np.abs(vals))), 1e-300)
    pair_a, pair_b = detect_pairs(vals, scale)

    def build(pair):
        i, j = pair
        vi, vj = spec.vectors[:, indices[i]], spec.vectors[:, indices[j]]
        if abs(vals[i].real) > 1e-8 * scale:
            return _pair_from_conjugate(J, R, vi)
        return _pair_from_imaginary(J, R, vi, vj)

    hp_a, hm_a = build(pair_a)
    hp_b, hm_b = build(pair_b)
    # symplectic Gram-Schmidt polish: renormalize pair a, project it out of
    # pair b, renormalize pair b
    hm_a = hm_a / _pairing(J, hm_a, hp_a)
    polished = []
    for f in (hp_b, hm_b):
        f = f + _pairing(J, f, hm_a) * hp_a - _pairing(J, f, hp_a) * hm_a
        polished.append(f)
    hp_b, hm_b = polished
    hm_b = hm_b / _pairing(J, hm_b, hp_b)
    return np.column_stack([hp_a, hm_a, hp_b, hm_b])


def compress_symplectic(op: TruncatedOperator, H: np.ndarray) -> np.ndarray:
    """4x4 representation, on the symplectic basis H, of the operator with its
    i*c*mu*Id drift removed (the removed shift keeps the Hamiltonian factor
    self-adjoint, since the identity commutes with everything)."""
    c = cf.phase_speed(op.kappa)
    shifted = op.matrix - 1j * c * op.mu * np.eye(op.matrix.shape[0])
    L4, *_ = np.linalg.lstsq(H, shifted @ H, rcond=None)
    return L4


# -- figure-eight tracing ----------------------------------------------------

@dataclass
class SpectralBranch:
    kappa: float
    eps: float
    mu_grid: np.ndarray
    lambda1_plus: np.ndarray
    lambda1_minus: np.ndarray
    lambda0_plus: np.ndarray
    lambda0_minus: np.ndarray
    mu_bar_numeric: float | None = None
    spectra: list = field(default_factory=list, repr=False)


def _leading_predictions(kappa: float, mu: float, eps: float) -> dict:
    pair = cf.lambda1_leading(kappa, mu, eps)
    p0p, p0m = cf.lambda0_leading(kappa, mu)
    return {
        "lambda1_plus": pair.value_plus,
        "lambda1_minus": pair.value_minus,
        "lambda0_plus": p0p,
        "lambda0_minus": p0m,
    }


class _QuadrupleTracker:
    """Evaluates the labeled quadruple at arbitrary mu, matching against the
    closest previously computed sample (or the leading-order formulas)."""

    def __init__(self, expansion: StokesExpansion, frakp, eps: float, K: int):
        self.expansion = expansion
        self.frakp = frakp
        self.eps = eps
        self.K = K
        self.samples: list[tuple[float, dict]] = []

    def predictions(self, mu: float) -> dict:
        if not self.samples:
            return _leading_predictions(self.expansion.kappa, mu, self.eps)
        ref_mu, ref = min(self.samples, key=lambda s: abs(s[0] - mu))
        lead_ref = _leading_predictions(self.expansion.kappa, ref_mu, self.eps)
        lead_here = _leading_predictions(self.expansion.kappa, mu, self.eps)
        return {k: ref[k] + (lead_here[k] - lead_ref[k]) for k in ref}

    def quadruple(self, mu: float) -> Quadruple:
        op = assemble(self.expansion, self.frakp, mu, self.eps, self.K)
        spec = eig(op)
        quad = quadruple_by_prediction(spec, self.predictions(mu))
        self.samples.append((mu, quad.as_dict()))
        return quad


def trace_figure_eight(kappa: float, eps: float, mu_max: float | None = None,
                       n_samples: int = 48, K: int = 32) -> SpectralBranch:
    """Sample the labeled near-zero quadruple over mu in (0, mu_max], locate the
    instability threshold mu_bar by bisection on the positive real part."""
    if cf.classify(kappa) is not cf.RegionLabel.UNSTABLE:
        raise NotUnstable(f"kappa={kappa} is not in the modulationally unstable set")
    mu_bar_lead = cf.mu_bar_leading(kappa, eps)
    if mu_max is None:
        mu_max = 1.25 * mu_bar_lead

    expansion = expand(kappa)
    frakp = coefficient_profiles(expansion, eps, max(8, K // 2))["frakp"]
    tracker = _QuadrupleTracker(expansion, frakp, eps, K)

    mus = np.linspace(mu_max / n_samples, mu_max, n_samples)
    quads = [tracker.quadruple(mu) for mu in mus]

    re1p = np.array([q.lambda1_plus.real for q in quads])
    re_tol = max(1e-13, 1e-6 * float(np.max(np.abs(re1p))))

    mu_bar = None
    split = re1p > re_tol
    if split.any() and not split[-1]:
        lo = mus[np.nonzero(split)[0][-1]]
        hi = mus[np.nonzero(split)[0][-1] + 1]
        tol = max(1e-3 * mu_bar_lead, 1e-12)
        min_bracket = 1e-4 * mu_bar_lead
        while hi - lo > max(tol, min_bracket):
            mid = 0.5 * (lo + hi)
            if tracker.quadruple(mid).lambda1_plus.real > re_tol:
                lo = mid
            else:
                hi = mid
        mu_bar = 0.5 * (lo + hi)

    return SpectralBranch(
        kappa, eps, mus,
        np.array([q.lambda1_plus for q in quads]),
        np.array([q.lambda1_minus for q in quads]),
        np.array([q.lambda0_plus for q in quads]),
        np.array([q.lambda0_minus for q in quads]),
        mu_bar_numeric=mu_bar,
    )


def max_growth_rate(kappa: float, eps: float, K: int = 32) -> tuple[float, float]:
    """Maximize Re(lambda1+) over the traced unstable band; golden-section
    refinement around the best grid sample."""
    if cf.classify(kappa) is not cf.RegionLabel.UNSTABLE:
        raise NotUnstable(f"kappa={kappa} is not in the modulationally unstable set")
    branch = trace_figure_eight(kappa, eps, K=K)
    expansion = expand(kappa)
    frakp = coefficient_profiles(expansion, eps, max(8, K // 2))["frakp"]
    tracker = _QuadrupleTracker(expansion, frakp, eps, K)
    tracker.samples = [(mu, {
        "lambda1_plus": branch.lambda1_plus[i],
        "lambda1_minus": branch.lambda1_minus[i],
        "lambda0_plus": branch.lambda0_plus[i],
        "lambda0_minus": branch.lambda0_minus[i],
    }) for i, mu in enumerate(branch.mu_grid)]

    i_best = int(np.argmax(branch.lambda1_plus.real))
    lo = branch.mu_grid[max(i_best - 1, 0)]
    hi = branch.mu_grid[min(i_best + 1, len(branch.mu_grid) - 1)]
    result = minimize_scalar(
        lambda mu: -tracker.quadruple(mu).lambda1_plus.real,
        bounds=(lo, hi), method="bounded",
        options={"xatol": 1e-4 * branch.mu_grid[i_best]})
    return float(result.x), float(-result.fun)
