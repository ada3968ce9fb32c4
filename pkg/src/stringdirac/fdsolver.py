"""Independent finite-difference eigenvalue route.

Discretizes -y'' + (L / r^2 - 2 B / r) y = lam y on a uniform grid with
Dirichlet walls and finds the lowest eigenvalues of the resulting
symmetric tridiagonal matrix by Sturm-sequence bisection, vectorized
over many shifts at once.  This route never touches the closed-form
level structure, so agreement with it is a genuine cross-check.

The Sturm count at shift sigma is the number of negative leading pivots
of the shifted LDL^T recurrence; pivots are floored away from zero so
the count stays exact in floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, InvalidParameterError, NoBoundStateError
from .params import CouplingSet, QuantumNumbers, StringBackground
from .radial import decoupled_coefficients
from .spectrum import eta_level

__all__ = [
    "OracleConfig",
    "sturm_counts",
    "lowest_eigenvalues",
    "fd_eigenvalues",
    "LevelComparison",
    "CrossValidationReport",
    "cross_validate",
]

_PIVOT_FLOOR = 1e-290


@dataclass(frozen=True)
class OracleConfig:
    """Discretization and bisection controls.

    r_max of None sizes the box from the target binding rate: forty
    decay lengths of the slowest level requested."""

    n_points: int = 8000
    n_eigen: int = 3
    r_max: float | None = None
    tol_rel: float = 1e-12
    max_passes: int = 80
    chunk: int = 80

    def __post_init__(self):
        if self.n_points < 64:
            raise InvalidParameterError("oracle grid needs at least 64 points")
        if self.n_eigen < 1:
            raise InvalidParameterError("need at least one eigenvalue")
        if self.r_max is not None and not (self.r_max > 0.0):
            raise InvalidParameterError("r_max must be positive")
        if not (0.0 < self.tol_rel < 1e-2):
            raise InvalidParameterError("tol_rel out of range")
        if self.max_passes < 1 or self.chunk < 8:
            raise InvalidParameterError("bisection controls out of range")


def sturm_counts(diag: np.ndarray, offsq: np.ndarray, sigmas: np.ndarray) -> np.ndarray:
    """Number of eigenvalues strictly below each shift, for a symmetric
    tridiagonal matrix with diagonal `diag` and squared off-diagonal
    `offsq`.  Vectorized over shifts."""
    sig = np.asarray(sigmas, dtype=float)
    q = diag[0] - sig
    count = (q < 0.0).astype(np.int64)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        for i in range(1, diag.size):
            q = np.where(np.abs(q) < _PIVOT_FLOOR, -_PIVOT_FLOOR, q)
            q = (diag[i] - sig) - offsq[i - 1] / q
            count += q < 0.0
    return count


def lowest_eigenvalues(
    diag: np.ndarray,
    off: np.ndarray,
    n_eigen: int,
    tol_rel: float = 1e-12,
    max_passes: int = 80,
    chunk: int = 80,
) -> np.ndarray:
    """Lowest `n_eigen` eigenvalues by batched Sturm bisection.  Each
    eigenvalue keeps its own bracket; every pass refines all brackets
    with `chunk` interior shifts at once."""
    diag = np.asarray(diag, dtype=float)
    off = np.asarray(off, dtype=float)
    if diag.ndim != 1 or off.shape != (diag.size - 1,):
        raise InvalidParameterError("tridiagonal shapes are inconsistent")
    if n_eigen > diag.size:
        raise InvalidParameterError("asked for more eigenvalues than rows")
    offsq = off * off

    # Gershgorin bounds bracket the whole spectrum.
    radius = np.zeros_like(diag)
    radius[:-1] += np.abs(off)
    radius[1:] += np.abs(off)
    lo0 = float(np.min(diag - radius))
    hi0 = float(np.max(diag + radius))
    los = np.full(n_eigen, lo0)
    his = np.full(n_eigen, hi0)

    for _ in range(max_passes):
        grids = [np.linspace(los[k], his[k], chunk + 2)[1:-1] for k in range(n_eigen)]
        cnt = sturm_counts(diag, offsq, np.concatenate(grids))
        for k in range(n_eigen):
            g = grids[k]
            c = cnt[k * chunk : (k + 1) * chunk]
            above = np.nonzero(c >= k + 1)[0]
            if above.size:
                i = above[0]
                his[k] = g[i]
                if i > 0:
                    los[k] = g[i - 1]
            else:
                los[k] = g[-1]
        scale = np.maximum(1.0, np.abs(his))
        if np.all(his - los <= tol_rel * scale):
            return 0.5 * (los + his)
    raise ConvergenceError("Sturm bisection failed to shrink its brackets")


def fd_eigenvalues(
    centrifugal: float, coulomb: float, cfg: OracleConfig = OracleConfig()
) -> np.ndarray:
    """Lowest eigenvalues of -d^2/dr^2 + centrifugal / r^2 - 2 coulomb / r
    on (0, r_max) with Dirichlet ends.

    Requires an attractive tail (coulomb > 0) and a centrifugal strength
    on the well-posed side of -1/4."""
    if coulomb <= 0.0:
        raise NoBoundStateError(
            f"tail is not attractive (coulomb = {coulomb:.6g}); the FD box "
            "would only see continuum artifacts"
        )
    if centrifugal < -0.25 - 1e-12:
        raise InvalidParameterError(
            "inverse-square strength below the -1/4 well-posedness bound"
        )
    delta = 0.5 * (1.0 + math.sqrt(max(0.0, 1.0 + 4.0 * centrifugal)))
    r_max = cfg.r_max
    if r_max is None:
        eta_min = coulomb / (delta + cfg.n_eigen)
        r_max = 40.0 / eta_min

    h = r_max / (cfg.n_points + 1)
    r = h * np.arange(1, cfg.n_points + 1)
    diag = 2.0 / (h * h) + centrifugal / (r * r) - 2.0 * coulomb / r
    off = np.full(cfg.n_points - 1, -1.0 / (h * h))
    return lowest_eigenvalues(
        diag, off, cfg.n_eigen, cfg.tol_rel, cfg.max_passes, cfg.chunk
    )


@dataclass(frozen=True)
class LevelComparison:
    m: int
    n: int
    eta_closed: float
    lambda_closed: float
    lambda_fd: float
    rel_deviation: float
    passed: bool


@dataclass(frozen=True)
class CrossValidationReport:
    tolerance: float
    levels: list[LevelComparison]
    skipped: list[dict]
    passed: bool

    @property
    def worst(self) -> float:
        if not self.levels:
            return float("nan")
        return max(lv.rel_deviation for lv in self.levels)


def cross_validate(
    bg: StringBackground,
    cp: CouplingSet,
    m_values: list[int],
    k: float = 0.0,
    cfg: OracleConfig = OracleConfig(),
    tolerance: float = 5e-4,
) -> CrossValidationReport:
    """Compare closed-form level positions against the FD route.

    The comparison is on the radial eigenvalue lam = -eta^2 of the lower
    branch, which both routes define without reference to each other.
    Angular sectors whose tail is not attractive are recorded as skipped
    rather than failed."""
    levels: list[LevelComparison] = []
    skipped: list[dict] = []
    for m in m_values:
        qn = QuantumNumbers(m=m, k=k, n=0)
        dc = decoupled_coefficients(bg, cp, qn)
        if dc.coulomb <= 0.0:
            skipped.append({"m": m, "reason": "tail not attractive"})
            continue
        try:
            lam_fd = fd_eigenvalues(dc.centrifugal_lower, dc.coulomb, cfg)
        except InvalidParameterError as exc:
            skipped.append({"m": m, "reason": str(exc)})
            continue
        for n in range(cfg.n_eigen):
            eta = eta_level(dc.coulomb, dc.origin_exponent_lower, n)
            lam_closed = -eta * eta
            rel = abs(lam_fd[n] - lam_closed) / abs(lam_closed)
            levels.append(
                LevelComparison(
                    m=m,
                    n=n,
                    eta_closed=eta,
                    lambda_closed=lam_closed,
                    lambda_fd=float(lam_fd[n]),
                    rel_deviation=float(rel),
                    passed=bool(rel <= tolerance),
                )
            )
    all_pass = bool(levels) and all(lv.passed for lv in levels)
    return CrossValidationReport(
        tolerance=tolerance, levels=levels, skipped=skipped, passed=all_pass
    )
