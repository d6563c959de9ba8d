"""Exception hierarchy."""


class FluxsimError(Exception):
    """Base class for all package-specific failures."""


class GridTooNarrowError(FluxsimError):
    """Boundary potential does not dominate the requested eigenvalues."""


class NoConvergenceError(FluxsimError):
    """Eigensolver or refinement loop failed to converge."""


class AmbiguousClassificationError(FluxsimError):
    """Probability centroid is too far from every potential well."""


class NoDoubleWellError(FluxsimError):
    """Potential has no double-well structure (small beta or far detuning)."""


class NotAWellError(FluxsimError):
    """Curvature at the supplied phase is not positive."""


class LevelAboveBarrierError(FluxsimError):
    """Harmonic well level lies above the barrier top; WKB inapplicable."""


class AsymmetricWellsError(FluxsimError):
    """Symmetric-well tunneling formula requested away from degeneracy."""


class MissingStatesError(FluxsimError):
    """Effective-model extraction lacks required classified states."""


class NoCommensurateDelayError(FluxsimError):
    """No integer solves the Ramsey delay condition within tolerance."""
