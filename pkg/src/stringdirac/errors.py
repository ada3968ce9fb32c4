"""Exception types shared across the package."""


class InvalidParameterError(ValueError):
    """A parameter is outside its admissible range."""


class DegenerateBranchError(RuntimeError):
    """The two-by-two radial coupling matrix is already diagonal with
    reversed branch ordering, so the rotation-based reduction does not
    apply.  Happens when the scalar coupling vanishes and the effective
    angular momentum is negative."""


class NoBoundStateError(RuntimeError):
    """The effective Coulomb strength is not attractive, so the discrete
    part of the spectrum is empty for the requested quantum numbers."""

    def __init__(self, message: str, threshold_energy: float = float("nan")):
        super().__init__(message)
        self.threshold_energy = threshold_energy


class EvanescentEnergyError(RuntimeError):
    """The binding shift exceeds the mass gap, so the squared energy goes
    negative and no propagating bound state exists at this level."""


class ConvergenceError(RuntimeError):
    """An iterative numerical routine failed to reach its tolerance."""


class BoundaryContaminationWarning(UserWarning):
    """A grid function is not negligible at the outer edge, so operator
    applications near the boundary are untrustworthy."""
