"""Bound states of a spin-1/2 particle around a magnetized conical
defect with a Coulomb-like scalar potential.

The core layers are importable directly; the HTTP service lives in
`stringdirac.service` and the command-line client in `stringdirac.cli`.
"""

from .errors import (
    BoundaryContaminationWarning,
    ConvergenceError,
    DegenerateBranchError,
    EvanescentEnergyError,
    InvalidParameterError,
    NoBoundStateError,
)
from .params import (
    CouplingSet,
    DerivedQuantities,
    QuantumNumbers,
    StringBackground,
    derive_quantities,
    identity_report,
)
from .spectrum import (
    BoundState,
    EnergyPair,
    bound_energy,
    build_bound_state,
    build_exact_spinor_set,
    spectrum_rows,
    surface_grid,
)

__version__ = "1.0.0"

__all__ = [
    "__version__",
    "BoundaryContaminationWarning",
    "ConvergenceError",
    "DegenerateBranchError",
    "EvanescentEnergyError",
    "InvalidParameterError",
    "NoBoundStateError",
    "CouplingSet",
    "DerivedQuantities",
    "QuantumNumbers",
    "StringBackground",
    "derive_quantities",
    "identity_report",
    "BoundState",
    "EnergyPair",
    "bound_energy",
    "build_bound_state",
    "build_exact_spinor_set",
    "spectrum_rows",
    "surface_grid",
]
