"""Exception hierarchy for bfspec."""


class BfError(Exception):
    """Base class for all bfspec errors."""


class SingularKappa(BfError):
    """kappa too close to 1/2, where e_11 and the Whitham-Benjamin function blow up."""


class ResonantKappa(BfError):
    """kappa too close to a resonant value 1/n (Wilton-ripple configuration)."""


class NotUnstable(BfError):
    """Operation requires kappa in the modulationally unstable region."""


class NoConvergence(BfError):
    """An iterative procedure failed to converge within its iteration budget."""


class GapFailure(BfError):
    """The near-zero eigenvalue quadruple is not separated from the rest of the spectrum."""


class ContourTooTight(BfError):
    """An eigenvalue lies too close to the Riesz contour."""


class RankFailure(BfError):
    """Numerical rank of a spectral projector differs from 4."""


class StructureViolation(BfError):
    """A 4x4 matrix does not carry the expected Hamiltonian/reversible structure."""

    def __init__(self, message, entries=()):
        super().__init__(message)
        self.entries = tuple(entries)


class DegenerateG(BfError):
    """G_11 is too small for the first decoupling step."""


class SingularSystem(BfError):
    """The 4x4 Sylvester system is numerically singular (mu-like degeneracy)."""
