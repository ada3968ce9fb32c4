"""Parameter bundles and the constants derived from them.

Physical setup: a spin-1/2 particle of mass `mass` and charge `charge`
moves in a static conical geometry with line element

    ds^2 = dt^2 - dr^2 - (rho r)^2 dphi^2 - dz^2,      0 < rho <= 1,

threaded by a uniform axial magnetic field (entering only through the
frequency omega = charge * a0 / (2 mass)) and dressed by a scalar
potential S(r) = s1 / r + s2 that adds to the mass.

After separating t, phi, z with quantum numbers (E, m, k), the radial
problem for the four spinor slices depends on the half-integer
j = m + 1/2 and on the constants computed in `derive_quantities`:

    centrifugal_norm   d      = sqrt(s1^2 + j^2 / rho^2)
    mixing_norm        gamma  = sqrt(j^2 + rho^2 s1^2) / rho
    mixing_angle       theta  with tan(theta) = -rho s1 / (rho gamma + j),
                       doubled; cos(theta) = j / (rho gamma)
    branch_shift       a      = -(j + s1^2 rho^2 / (j + rho gamma)) / (rho d)
    coulomb_strength   B      = mass j omega / rho - s1 (mass + s2)
    casimir_lower      d (d - a),  casimir_upper  d (d + a)
    origin_exponent    delta  = 1/2 + sqrt(1/4 + d (d - a))

The norm pair (gamma, d) is computed by two different routes on purpose;
their equality is one of the cross-checks exposed by `identity_report`.
When s1 = 0 and j < 0 the mixing matrix is already diagonal but with the
branches swapped, so `branch_shift` falls back to -sign(j) and the
`degenerate_branch` flag is raised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidParameterError

__all__ = [
    "StringBackground",
    "CouplingSet",
    "QuantumNumbers",
    "DerivedQuantities",
    "derive_quantities",
    "identity_report",
]


@dataclass(frozen=True)
class StringBackground:
    """Conical geometry parameter.  rho = 1 is flat space."""

    rho: float

    def __post_init__(self):
        if not (0.0 < self.rho <= 1.0):
            raise InvalidParameterError("deficit parameter rho must lie in (0, 1]")

    @property
    def defect_mass_density(self) -> float:
        """Linear mass density of the defect, (1 - rho) / 4."""
        return (1.0 - self.rho) / 4.0


@dataclass(frozen=True)
class CouplingSet:
    """Particle couplings: rest mass, electric charge, gauge amplitude a0
    and the scalar potential coefficients s1 (Coulomb-like) and s2
    (constant mass shift)."""

    mass: float
    charge: float = 1.0
    a0: float = 0.0
    s1: float = 0.0
    s2: float = 0.0

    def __post_init__(self):
        if not (self.mass > 0.0):
            raise InvalidParameterError("mass must be positive")
        for name in ("charge", "a0", "s1", "s2"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise InvalidParameterError(f"{name} must be finite")

    @property
    def omega(self) -> float:
        """Cyclotron-like frequency charge * a0 / (2 mass)."""
        return self.charge * self.a0 / (2.0 * self.mass)


@dataclass(frozen=True)
class QuantumNumbers:
    """Conserved labels of a single state: integer angular index m
    (the total angular momentum is j = m + 1/2), axial momentum k and
    radial level n >= 0."""

    m: int
    k: float = 0.0
    n: int = 0

    def __post_init__(self):
        if not isinstance(self.m, int) or isinstance(self.m, bool):
            raise InvalidParameterError("angular index m must be an integer")
        if not math.isfinite(self.k):
            raise InvalidParameterError("axial momentum k must be finite")
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 0:
            raise InvalidParameterError("radial level n must be a nonnegative integer")

    @property
    def two_j(self) -> int:
        """Twice the total angular momentum, always an odd integer."""
        return 2 * self.m + 1

    @property
    def j(self) -> float:
        return self.two_j / 2.0


@dataclass(frozen=True)
class DerivedQuantities:
    mixing_angle: float
    mixing_norm: float
    centrifugal_norm: float
    branch_shift: float
    casimir_lower: float
    casimir_upper: float
    casimir_root: float
    origin_exponent: float
    casimir_root_upper: float
    origin_exponent_upper: float
    coulomb_strength: float
    degenerate_branch: bool


def _casimir_root(kappa: float) -> float:
    """Positive solution mu of mu (mu + 1) = kappa.

    kappa slightly below -1/4 from roundoff is clipped; genuinely smaller
    values mean the effective inverse-square well is overcritical."""
    disc = 1.0 + 4.0 * kappa
    if disc < 0.0:
        if disc < -1e-12:
            raise InvalidParameterError(
                "inverse-square strength below the -1/4 well-posedness bound"
            )
        disc = 0.0
    return 0.5 * (-1.0 + math.sqrt(disc))


def derive_quantities(
    bg: StringBackground, cp: CouplingSet, qn: QuantumNumbers
) -> DerivedQuantities:
    j = qn.j
    rho = bg.rho
    s1 = cp.s1

    d = math.hypot(s1, j / rho)
    # Independent route: gamma as the norm of the off-diagonal mixing data.
    gamma = math.sqrt(j * j + rho * rho * s1 * s1) / rho

    degenerate = False
    if s1 == 0.0 and j < 0.0:
        # Mixing matrix already diagonal, branches swapped.
        a = 1.0
        theta = 0.0
        degenerate = True
    else:
        denom = rho * gamma + j
        a = -(j + s1 * s1 * rho * rho / denom) / (rho * d)
        theta = 2.0 * math.atan2(-rho * s1, denom)

    kappa_lower = d * (d - a)
    kappa_upper = d * (d + a)
    mu_lower = _casimir_root(kappa_lower)
    mu_upper = _casimir_root(kappa_upper)

    b_strength = cp.mass * j * cp.omega / rho - s1 * (cp.mass + cp.s2)

    return DerivedQuantities(
        mixing_angle=theta,
        mixing_norm=gamma,
        centrifugal_norm=d,
        branch_shift=a,
        casimir_lower=kappa_lower,
        casimir_upper=kappa_upper,
        casimir_root=mu_lower,
        origin_exponent=mu_lower + 1.0,
        casimir_root_upper=mu_upper,
        origin_exponent_upper=mu_upper + 1.0,
        coulomb_strength=b_strength,
        degenerate_branch=degenerate,
    )


def identity_report(
    bg: StringBackground, cp: CouplingSet, qn: QuantumNumbers
) -> dict[str, float]:
    """Relative residuals of the algebraic identities tying the derived
    constants together.  All entries are zero in exact arithmetic;
    residuals are scaled by the magnitude of the terms entering them.
    """
    dq = derive_quantities(bg, cp, qn)
    j = qn.j
    rho = bg.rho
    d = dq.centrifugal_norm
    gamma = dq.mixing_norm
    a = dq.branch_shift
    theta = dq.mixing_angle

    out: dict[str, float] = {}

    scale = max(abs(gamma), abs(d))
    out["norm_match"] = abs(gamma - d) / scale

    # cos(theta) = j / (rho gamma), sin(theta) = -s1 / gamma.
    out["cosine_closed_form"] = abs(math.cos(theta) - j / (rho * gamma))
    out["sine_closed_form"] = abs(math.sin(theta) + cp.s1 / gamma)

    # Unit branch shift: a = -1 away from the degenerate configuration,
    # equivalently a = -sign(j) when s1 = 0.
    if dq.degenerate_branch:
        out["unit_branch_shift"] = abs(a - 1.0)
    else:
        out["unit_branch_shift"] = abs(a + 1.0)

    # mu (mu + 1) must reproduce the Casimir strengths.
    mu = dq.casimir_root
    out["casimir_root_lower"] = abs(mu * (mu + 1.0) - dq.casimir_lower) / max(
        1.0, abs(dq.casimir_lower)
    )
    mu_u = dq.casimir_root_upper
    out["casimir_root_upper"] = abs(mu_u * (mu_u + 1.0) - dq.casimir_upper) / max(
        1.0, abs(dq.casimir_upper)
    )

    # Quadratic form behind the root: 1 - 4 a d + 4 d^2 = (2 d - a)^2 + ...
    # reduces to (2 d + 1)^2 exactly when a = -1.
    if not dq.degenerate_branch:
        lhs = 1.0 - 4.0 * a * d + 4.0 * d * d
        rhs = (2.0 * d + 1.0) ** 2
        out["root_discriminant"] = abs(lhs - rhs) / max(1.0, abs(rhs))

    return out
