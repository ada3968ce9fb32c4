"""Frame fields, curved gamma matrices and the spin connection for the
conical geometry.

Coordinate order is (t, r, phi, z) throughout, with signature (+,-,-,-).
The local frame is attached by rotating the Cartesian dyad into the
(r, phi) plane, so frame components depend on phi even though the
geometry does not; all physical outputs below are checked to be
phi-independent where they must be.

Index conventions: `frame_to_coord[a][mu]` carries a frame index a down
to a coordinate index mu (inverse frame), while `coord_to_frame[a][mu]`
is the direct frame e^a_mu.  The two matrices are mutual inverses in the
sense sum_a coord_to_frame[a][mu] * frame_to_coord[a][nu] = delta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError
from .params import StringBackground

__all__ = [
    "MINKOWSKI",
    "flat_gamma",
    "spin_sigma3",
    "FramePair",
    "frame_pair",
    "metric",
    "metric_inverse",
    "christoffel",
    "gamma_matrices",
    "gamma_at",
    "clifford_residual",
    "spin_connection_components",
    "axial_spin_connection",
]

MINKOWSKI = np.diag([1.0, -1.0, -1.0, -1.0])

_PAULI = (
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)


def flat_gamma(a: int) -> np.ndarray:
    """Flat-space gamma matrix in the standard block (Dirac) basis."""
    if a == 0:
        return np.diag([1.0, 1.0, -1.0, -1.0]).astype(complex)
    if a in (1, 2, 3):
        s = _PAULI[a - 1]
        z = np.zeros((2, 2), dtype=complex)
        return np.block([[z, s], [-s, z]])
    raise InvalidParameterError("frame index must be 0..3")


def spin_sigma3() -> np.ndarray:
    """Axial spin operator diag(1, -1, 1, -1)."""
    return np.diag([1.0, -1.0, 1.0, -1.0]).astype(complex)


def _check_radius(r: float) -> None:
    if not (r > 0.0):
        raise InvalidParameterError("radius must be positive")


@dataclass(frozen=True)
class FramePair:
    """Direct frame e^a_mu and inverse frame e_a^mu as 4x4 arrays."""

    coord_to_frame: np.ndarray
    frame_to_coord: np.ndarray


def frame_pair(bg: StringBackground, r: float, phi: float) -> FramePair:
    _check_radius(r)
    c, s = math.cos(phi), math.sin(phi)
    w = bg.rho * r
    direct = np.array(
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, c, -w * s, 0.0],
            [0.0, s, w * c, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]
    )
    inverse = np.array(
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, c, -s / w, 0.0],
            [0.0, s, c / w, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]
    )
    return FramePair(coord_to_frame=direct, frame_to_coord=inverse)


def metric(bg: StringBackground, r: float) -> np.ndarray:
    _check_radius(r)
    return np.diag([1.0, -1.0, -((bg.rho * r) ** 2), -1.0])


def metric_inverse(bg: StringBackground, r: float) -> np.ndarray:
    _check_radius(r)
    return np.diag([1.0, -1.0, -1.0 / (bg.rho * r) ** 2, -1.0])


def christoffel(bg: StringBackground, r: float) -> np.ndarray:
    """Connection coefficients C[lam, mu, nu] for the conical metric.
    Only the r-phi sector is nonzero."""
    _check_radius(r)
    c = np.zeros((4, 4, 4))
    c[1, 2, 2] = -bg.rho * bg.rho * r
    c[2, 1, 2] = 1.0 / r
    c[2, 2, 1] = 1.0 / r
    return c


def gamma_matrices(bg: StringBackground, r: float, phi: float) -> list[np.ndarray]:
    """Curved gamma matrices gamma^mu = e_a^mu gamma^a, coordinate order
    (t, r, phi, z)."""
    fp = frame_pair(bg, r, phi)
    flat = [flat_gamma(a) for a in range(4)]
    out = []
    for mu in range(4):
        g = np.zeros((4, 4), dtype=complex)
        for a in range(4):
            g = g + fp.frame_to_coord[a, mu] * flat[a]
        out.append(g)
    return out


def gamma_at(bg: StringBackground, r: float, phi: float, index: int) -> np.ndarray:
    if index not in (0, 1, 2, 3):
        raise InvalidParameterError("coordinate index must be 0..3")
    return gamma_matrices(bg, r, phi)[index]


def clifford_residual(bg: StringBackground, r: float, phi: float) -> float:
    """Largest entrywise violation of the anticommutation relation
    {gamma^mu, gamma^nu} = 2 g^mu nu over all index pairs."""
    gams = gamma_matrices(bg, r, phi)
    ginv = metric_inverse(bg, r)
    eye = np.eye(4, dtype=complex)
    worst = 0.0
    for mu in range(4):
        for nu in range(4):
            anti = gams[mu] @ gams[nu] + gams[nu] @ gams[mu]
            worst = max(worst, float(np.max(np.abs(anti - 2.0 * ginv[mu, nu] * eye))))
    return worst


def _frame_derivatives(bg: StringBackground, r: float, phi: float) -> np.ndarray:
    """d/dx^nu of the inverse frame, index order [nu][a][mu].  Only the
    r and phi derivatives are nonzero."""
    c, s = math.cos(phi), math.sin(phi)
    w = bg.rho * r
    d = np.zeros((4, 4, 4))
    # radial derivative hits the 1/(rho r) entries
    d[1, 1, 2] = s / (w * r)
    d[1, 2, 2] = -c / (w * r)
    # angular derivative rotates the dyad
    d[2, 1, 1] = -s
    d[2, 1, 2] = -c / w
    d[2, 2, 1] = c
    d[2, 2, 2] = -s / w
    return d


def spin_connection_components(
    bg: StringBackground, r: float, phi: float
) -> list[np.ndarray]:
    """Spinor connection matrices Gamma_nu for nu in (t, r, phi, z),

        Gamma_nu = (1/8) omega_{nu a b} [gamma^a, gamma^b],

    with omega built from the frame, its coordinate derivatives and the
    Christoffel coefficients.  For this geometry only the phi component
    is nonzero and it is proportional to the axial spin operator.
    """
    fp = frame_pair(bg, r, phi)
    chris = christoffel(bg, r)
    dframe = _frame_derivatives(bg, r, phi)
    # frame index lowered with the Minkowski metric
    frame_low = MINKOWSKI @ fp.coord_to_frame
    flat = [flat_gamma(a) for a in range(4)]

    out = []
    for nu in range(4):
        omega = np.zeros((4, 4))
        for a in range(4):
            for b in range(4):
                acc = 0.0
                for lam in range(4):
                    cov = dframe[nu, b, lam]
                    for sig in range(4):
                        cov += chris[lam, nu, sig] * fp.frame_to_coord[b, sig]
                    acc += frame_low[a, lam] * cov
                omega[a, b] = acc
        g = np.zeros((4, 4), dtype=complex)
        for a in range(4):
            for b in range(4):
                if omega[a, b] != 0.0:
                    comm = flat[a] @ flat[b] - flat[b] @ flat[a]
                    g = g + (omega[a, b] / 8.0) * comm
        out.append(g)
    return out


def axial_spin_connection(bg: StringBackground) -> np.ndarray:
    """Closed form of the phi component: i (1 - rho) / 2 times the axial
    spin operator.  Vanishes in flat space."""
    return 0.5j * (1.0 - bg.rho) * spin_sigma3()
