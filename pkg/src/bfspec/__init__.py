"""Spectral stability toolkit for small-amplitude gravity-capillary waves in
deep water: closed-form instability coefficients, truncated Bloch-Floquet
operators, near-zero eigenvalue tracking, and 4x4 Hamiltonian reduction."""

from .closed_form import (
    KAPPA_CRITICAL,
    CapillaryParam,
    RegionLabel,
    SplitRegime,
    breve_c,
    classify,
    coeffs_e,
    delta_bf_leading,
    flat_eigenvalue,
    flat_quadruple,
    lambda0_leading,
    lambda1_leading,
    mu_bar_leading,
    phase_speed,
    whitham_benjamin,
)
from .errors import (
    BfError,
    ContourTooTight,
    DegenerateG,
    GapFailure,
    NoConvergence,
    NotUnstable,
    RankFailure,
    ResonantKappa,
    SingularKappa,
    SingularSystem,
    StructureViolation,
)
from .operators import (
    TruncatedOperator,
    assemble,
    assemble_B,
    assemble_flat,
    dump_operator,
    load_operator,
    structure_matrices,
)
from .profiles import PeriodicProfile
from .reduction import (
    BlockDiagonalization,
    HamiltonianBlocks4,
    SylvesterCoeffs,
    block_diagonalize,
    check_structure,
    eigenpair_of_U,
    first_decoupling,
    solve_homological,
    sylvester_det,
    sylvester_inverse,
)
from .spectral import (
    Quadruple,
    SpectralBranch,
    SpectrumResult,
    compress,
    compress_symplectic,
    contour_radius,
    detect_pairs,
    eig,
    flat_symplectic_basis,
    max_growth_rate,
    symplectic_subspace_basis,
    near_zero_quadruple,
    quadruple_by_prediction,
    riesz_projector,
    trace_figure_eight,
)
from .stokes import (
    StokesExpansion,
    coefficient_profiles,
    dirichlet_neumann_taylor,
    expand,
    solve_frakp,
    stokes_residual,
    wave_profiles,
)

__version__ = "1.0.0"
