"""Radial reduction: the coupled first-order system for the four spinor
slices, the equivalent second-order matrix problem, its rotation to
decoupled form and the shift-operator factorization constants.

Profiles on the grid follow the slice naming (f_plus, f_minus, g_plus,
g_minus); the second-order machinery acts on the pair (f_plus, g_minus)
which closes under elimination.  The mixed pair couples through the
matrix

    Xi(r) = (1/r^2) [[d^2 - j/rho,  s1        ],
                     [s1,           d^2 + j/rho]]

acting on (f_plus, g_minus), plus the shared Coulomb tail -2 B / r.
Rotating by half the mixing angle diagonalizes Xi with eigenvalues
d (d + a) (upper branch) and d (d - a) (lower branch).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateBranchError, InvalidParameterError
from .gridfn import GridFunction, first_derivative, second_derivative
from .params import (
    CouplingSet,
    DerivedQuantities,
    QuantumNumbers,
    StringBackground,
    derive_quantities,
)

__all__ = [
    "scalar_potential",
    "magnetic_profile",
    "XiCoefficients",
    "xi_coefficients",
    "RotationResult",
    "diagonalize",
    "xi_rotation_residual",
    "DecoupledCoefficients",
    "decoupled_coefficients",
    "FactorizationConstants",
    "factorization_constants",
    "ode_residual",
    "SpinorRadialSet",
    "first_order_residuals",
    "coupled_pair_residuals",
]

_CRITICAL_TOL = 1e-10


def scalar_potential(cp: CouplingSet, r: np.ndarray) -> np.ndarray:
    """Coulomb-like scalar dressing S(r) = s1 / r + s2 (adds to the mass)."""
    r = np.asarray(r, dtype=float)
    return cp.s1 / r + cp.s2


def magnetic_profile(
    bg: StringBackground, cp: CouplingSet, qn: QuantumNumbers, r: np.ndarray
) -> np.ndarray:
    """Effective angular-magnetic profile W(r) = j / (rho r) - mass * omega."""
    r = np.asarray(r, dtype=float)
    return qn.j / (bg.rho * r) - cp.mass * cp.omega


@dataclass(frozen=True)
class XiCoefficients:
    """Coefficients of the coupled second-order pair.  The 1/r^2 matrix is
    isotropic_centrifugal * I plus the traceless part built from
    angular_split (diagonal, opposite signs) and scalar_mixing
    (off-diagonal)."""

    isotropic_centrifugal: float
    angular_split: float
    scalar_mixing: float
    coulomb_strength: float
    energy_offset: float


def xi_coefficients(
    bg: StringBackground, cp: CouplingSet, qn: QuantumNumbers, energy: float
) -> XiCoefficients:
    dq = derive_quantities(bg, cp, qn)
    d = dq.centrifugal_norm
    return XiCoefficients(
        isotropic_centrifugal=d * d,
        angular_split=qn.j / bg.rho,
        scalar_mixing=cp.s1,
        coulomb_strength=dq.coulomb_strength,
        energy_offset=energy * energy
        - qn.k * qn.k
        - (cp.mass + cp.s2) ** 2,
    )


def _xi_matrix(xc: XiCoefficients) -> np.ndarray:
    return np.array(
        [
            [xc.isotropic_centrifugal - xc.angular_split, xc.scalar_mixing],
            [xc.scalar_mixing, xc.isotropic_centrifugal + xc.angular_split],
        ]
    )


@dataclass(frozen=True)
class RotationResult:
    mixing_angle: float
    rotation: np.ndarray
    upper_strength: float
    lower_strength: float


def diagonalize(
    bg: StringBackground, cp: CouplingSet, qn: QuantumNumbers
) -> RotationResult:
    """Half-angle rotation diagonalizing the Xi matrix.

    Raises DegenerateBranchError when the matrix is diagonal with the
    branch ordering reversed (s1 = 0 and j < 0); callers that only need
    the decoupled strengths should use `decoupled_coefficients`, which
    handles that configuration by swapping branches instead.
    """
    dq = derive_quantities(bg, cp, qn)
    if dq.degenerate_branch:
        raise DegenerateBranchError(
            "coupling matrix is already diagonal with reversed branches; "
            "the half-angle rotation is undefined here"
        )
    half = 0.5 * dq.mixing_angle
    c, s = math.cos(half), math.sin(half)
    rot = np.array([[c, s], [-s, c]])
    return RotationResult(
        mixing_angle=dq.mixing_angle,
        rotation=rot,
        upper_strength=dq.casimir_upper,
        lower_strength=dq.casimir_lower,
    )


def xi_rotation_residual(
    bg: StringBackground, cp: CouplingSet, qn: QuantumNumbers
) -> float:
    """Relative off-diagonal remainder of R Xi R^-1 together with the
    deviation of its diagonal from the closed-form branch strengths."""
    rr = diagonalize(bg, cp, qn)
    xc = xi_coefficients(bg, cp, qn, energy=0.0)
    m = rr.rotation @ _xi_matrix(xc) @ rr.rotation.T
    scale = max(1.0, float(np.max(np.abs(m))))
    off = abs(m[0, 1]) + abs(m[1, 0])
    diag_dev = max(abs(m[0, 0] - rr.upper_strength), abs(m[1, 1] - rr.lower_strength))
    return (off + diag_dev) / scale


@dataclass(frozen=True)
class DecoupledCoefficients:
    """Inputs of the two one-dimensional radial problems

        -y'' + (centrifugal / r^2 - 2 coulomb / r) y = (energy_sq - offset) y

    for the lower (outer spinor pair) and upper (inner pair) branches.
    `offset` collects k^2 + (mass + s2)^2, plus the squared magnetic
    frequency in strict mode.  A branch sitting at centrifugal = -1/4 is
    at the well-posedness boundary and gets its critical flag set.
    """

    centrifugal_lower: float
    centrifugal_upper: float
    coulomb: float
    offset: float
    origin_exponent_lower: float
    origin_exponent_upper: float
    critical_lower: bool
    critical_upper: bool
    mode: str


def _energy_offset(cp: CouplingSet, qn: QuantumNumbers, mode: str) -> float:
    base = qn.k * qn.k + (cp.mass + cp.s2) ** 2
    if mode == "strict-omega2":
        return base + (cp.mass * cp.omega) ** 2
    if mode == "canonical":
        return base
    raise InvalidParameterError("mode must be 'canonical' or 'strict-omega2'")


def decoupled_coefficients(
    bg: StringBackground,
    cp: CouplingSet,
    qn: QuantumNumbers,
    mode: str = "canonical",
) -> DecoupledCoefficients:
    dq = derive_quantities(bg, cp, qn)
    return DecoupledCoefficients(
        centrifugal_lower=dq.casimir_lower,
        centrifugal_upper=dq.casimir_upper,
        coulomb=dq.coulomb_strength,
        offset=_energy_offset(cp, qn, mode),
        origin_exponent_lower=dq.origin_exponent,
        origin_exponent_upper=dq.origin_exponent_upper,
        critical_lower=abs(dq.casimir_lower + 0.25) <= _CRITICAL_TOL,
        critical_upper=abs(dq.casimir_upper + 0.25) <= _CRITICAL_TOL,
        mode=mode,
    )


@dataclass(frozen=True)
class FactorizationConstants:
    """Shift-operator data for one branch at binding rate eta.

    `ladder_constant` is a2 (a2 + 1) - casimir, computed once from the
    defining product and once from the expanded quadratic form; the two
    must agree identically.  At the quantized rates eta = coulomb / (delta + n)
    the lower-route constant equals n (2 delta + n - 1) and the upper-route
    constant (n + 1)(2 delta + n)."""

    shift_root: float
    ladder_constant: float
    quadratic_form: float


def factorization_constants(
    dq: DerivedQuantities, eta: float, route: str = "lower"
) -> FactorizationConstants:
    if eta <= 0.0:
        raise InvalidParameterError("binding rate eta must be positive")
    ratio = dq.coulomb_strength / eta
    d = dq.centrifugal_norm
    a = dq.branch_shift
    if route == "lower":
        a2 = -1.0 + ratio
        quad = (ratio - 0.5) ** 2 - (d - 0.5 * a) ** 2 + (a * a - 1.0) / 4.0
    elif route == "upper":
        a2 = -1.0 - ratio
        quad = (ratio + 0.5) ** 2 - (d - 0.5 * a) ** 2 + (a * a - 1.0) / 4.0
    else:
        raise InvalidParameterError("route must be 'lower' or 'upper'")
    lam = a2 * (a2 + 1.0) - dq.casimir_lower
    return FactorizationConstants(
        shift_root=a2, ladder_constant=lam, quadratic_form=quad
    )


def ode_residual(
    y: GridFunction, centrifugal: float, coulomb: float, eta: float
) -> GridFunction:
    """Pointwise defect -y'' + (centrifugal / r^2 - 2 coulomb / r + eta^2) y."""
    r = y.r
    ypp = second_derivative(y).values
    vals = -ypp + (centrifugal / (r * r) - 2.0 * coulomb / r + eta * eta) * y.values
    return y.with_values(vals)


@dataclass(frozen=True)
class SpinorRadialSet:
    """The four radial slices of a stationary spinor at fixed (E, m, k),
    sampled on a shared grid."""

    bg: StringBackground
    cp: CouplingSet
    qn: QuantumNumbers
    energy: float
    f_plus: GridFunction
    f_minus: GridFunction
    g_plus: GridFunction
    g_minus: GridFunction

    def __post_init__(self):
        base = self.f_plus
        for name in ("f_minus", "g_plus", "g_minus"):
            if not base.same_grid(getattr(self, name)):
                raise InvalidParameterError("all four slices must share one grid")
        if not math.isfinite(self.energy):
            raise InvalidParameterError("energy must be finite")


def first_order_residuals(s: SpinorRadialSet) -> dict[str, GridFunction]:
    """Pointwise defects of the four coupled first-order equations.

    Keys name the slice whose radial derivative appears in the equation.
    All four vanish on exact solutions; on sampled profiles they decay
    at second order in the grid step away from the endpoints.
    """
    r = s.f_plus.r
    w = magnetic_profile(s.bg, s.cp, s.qn, r)
    pot = s.cp.mass + scalar_potential(s.cp, r)
    d_minus = pot - s.energy
    d_plus = pot + s.energy
    k = s.qn.k

    fp, fm = s.f_plus.values, s.f_minus.values
    gp, gm = s.g_plus.values, s.g_minus.values
    dfp = first_derivative(s.f_plus).values
    dfm = first_derivative(s.f_minus).values
    dgp = first_derivative(s.g_plus).values
    dgm = first_derivative(s.g_minus).values

    res = {
        "g_minus": dgm + w * gm + k * gp + d_minus * fp,
        "g_plus": dgp - w * gp + k * gm + d_minus * fm,
        "f_minus": dfm + w * fm - k * fp + d_plus * gp,
        "f_plus": dfp - w * fp - k * fm + d_plus * gm,
    }
    return {key: s.f_plus.with_values(v) for key, v in res.items()}


def coupled_pair_residuals(s: SpinorRadialSet) -> dict[str, GridFunction]:
    """Pointwise defects of the eliminated second-order pair in
    (f_plus, g_minus).  Uses the strict energy offset because the
    elimination of the inner slices keeps the squared magnetic frequency.
    """
    r = s.f_plus.r
    xc = xi_coefficients(s.bg, s.cp, s.qn, s.energy)
    omega_sq = (s.cp.mass * s.cp.omega) ** 2
    shared = -2.0 * xc.coulomb_strength / r - (xc.energy_offset - omega_sq)
    fp = s.f_plus.values
    gm = s.g_minus.values
    fpp = second_derivative(s.f_plus).values
    gmm = second_derivative(s.g_minus).values
    inv_r2 = 1.0 / (r * r)

    res_f = (
        -fpp
        + ((xc.isotropic_centrifugal - xc.angular_split) * inv_r2 + shared) * fp
        + xc.scalar_mixing * inv_r2 * gm
    )
    res_g = (
        -gmm
        + ((xc.isotropic_centrifugal + xc.angular_split) * inv_r2 + shared) * gm
        + xc.scalar_mixing * inv_r2 * fp
    )
    return {
        "f_plus": s.f_plus.with_values(res_f),
        "g_minus": s.f_plus.with_values(res_g),
    }
