"""Discrete spectrum, bound-state profiles and parameter sweeps.

Binding is controlled by the effective Coulomb strength B derived from
the couplings.  For B > 0 the level n of the lower branch sits at the
rate eta_n = B / (delta + n) with squared energy

    E^2 = offset - eta_n^2,
    offset = k^2 + (mass + s2)^2   (canonical mode)
           = k^2 + (mass + s2)^2 + (mass omega)^2   (strict-omega2 mode).

The two modes differ by whether the squared magnetic frequency left over
from eliminating the inner spinor slices is kept in the energy relation.
Reported spectra default to canonical; exact four-slice reconstructions
always use the strict relation because only it closes the first-order
system identically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    EvanescentEnergyError,
    InvalidParameterError,
    NoBoundStateError,
)
from .gridfn import GridFunction, first_derivative
from .params import (
    CouplingSet,
    QuantumNumbers,
    StringBackground,
    derive_quantities,
)
from .radial import (
    SpinorRadialSet,
    decoupled_coefficients,
    first_order_residuals,
    magnetic_profile,
    scalar_potential,
)
from .special import kummer_poly, pochhammer, tail_cutoff

__all__ = [
    "EnergyPair",
    "eta_level",
    "bound_energy",
    "norm_squared_closed",
    "profile_values",
    "BoundState",
    "build_bound_state",
    "node_count",
    "build_exact_spinor_set",
    "SpectrumRow",
    "spectrum_rows",
    "SurfaceResult",
    "surface_grid",
    "SURFACE_AXES",
    "DEFAULT_AXIS_RANGES",
]


@dataclass(frozen=True)
class EnergyPair:
    """Particle and antiparticle energies of one bound level, with the
    binding rate eta and the principal combination nu = delta + n."""

    energy_plus: float
    energy_minus: float
    eta: float
    nu: float
    mode: str


def eta_level(coulomb: float, origin_exponent: float, n: int) -> float:
    """Binding rate of level n, coulomb / (origin_exponent + n)."""
    if n < 0:
        raise InvalidParameterError("radial level n must be nonnegative")
    return coulomb / (origin_exponent + n)


def bound_energy(
    bg: StringBackground,
    cp: CouplingSet,
    qn: QuantumNumbers,
    mode: str = "canonical",
) -> EnergyPair:
    """Closed-form energies of level (m, k, n).

    Raises NoBoundStateError when the effective Coulomb strength is not
    attractive and EvanescentEnergyError when the binding rate exceeds
    the mass gap so the squared energy would go negative.
    """
    dc = decoupled_coefficients(bg, cp, qn, mode=mode)
    threshold = math.sqrt(dc.offset)
    if dc.coulomb <= 0.0:
        raise NoBoundStateError(
            "effective Coulomb strength is not attractive for these "
            f"quantum numbers (B = {dc.coulomb:.6g})",
            threshold_energy=threshold,
        )
    eta = eta_level(dc.coulomb, dc.origin_exponent_lower, qn.n)
    e_sq = dc.offset - eta * eta
    if e_sq < 0.0:
        raise EvanescentEnergyError(
            f"binding rate {eta:.6g} exceeds the mass gap; squared energy "
            f"{e_sq:.6g} is negative at level n = {qn.n}"
        )
    e = math.sqrt(e_sq)
    return EnergyPair(
        energy_plus=e,
        energy_minus=-e,
        eta=eta,
        nu=dc.origin_exponent_lower + qn.n,
        mode=mode,
    )


def norm_squared_closed(delta: float, eta: float, n: int) -> float:
    """Exact squared norm of the unnormalized profile
    r^delta exp(-eta r) 1F1(-n; 2 delta; 2 eta r) on (0, infinity):

        (2 eta)^(-2 delta - 1) n! Gamma(2 delta) (2 n + 2 delta) / (2 delta)_n
    """
    if delta <= 0.0 or eta <= 0.0:
        raise InvalidParameterError("delta and eta must be positive")
    b = 2.0 * delta
    return (
        (2.0 * eta) ** (-b - 1.0)
        * math.factorial(n)
        * math.gamma(b)
        * (2.0 * n + b)
        / pochhammer(b, n)
    )


def profile_values(delta: float, eta: float, n: int, r: np.ndarray) -> np.ndarray:
    """Unnormalized bound profile r^delta exp(-eta r) 1F1(-n; 2 delta; 2 eta r),
    evaluated through the log of the envelope to stay in range for large
    exponents."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise InvalidParameterError("profile radii must be positive")
    envelope = np.exp(delta * np.log(r) - eta * r)
    return envelope * kummer_poly(n, 2.0 * delta, 2.0 * eta * r)


def node_count(gf: GridFunction) -> int:
    """Number of interior sign changes, ignoring exact zeros."""
    s = np.sign(gf.values)
    s = s[s != 0.0]
    if s.size < 2:
        return 0
    return int(np.sum(s[1:] != s[:-1]))


@dataclass(frozen=True)
class BoundState:
    """A normalized bound level: lower-branch profile, its upper-branch
    partner at the same binding rate, and the spectral data."""

    bg: StringBackground
    cp: CouplingSet
    qn: QuantumNumbers
    pair: EnergyPair
    y_lower: GridFunction
    y_upper: GridFunction
    norm_constant: float

    @property
    def r(self) -> np.ndarray:
        return self.y_lower.r


def _partner_level(nu: float, delta_up: float) -> int | None:
    """Level index of the partner branch sharing nu = delta + n, or None
    when the partner profile vanishes identically (swapped-branch ground
    level, where the shared rate sits one step below the partner ladder)."""
    n_f = nu - delta_up
    n_int = int(round(n_f))
    if abs(n_f - n_int) > 1e-8:
        raise InvalidParameterError(
            "branch exponents are not ladder-compatible at this binding rate"
        )
    if n_int == -1:
        return None
    if n_int < -1:
        raise InvalidParameterError(
            "upper branch does not support a partner at this binding rate"
        )
    return n_int


def _grid_bounds(
    delta: float, eta: float, n: int, r_min: float | None, r_max: float | None
) -> tuple[float, float]:
    if r_max is None:
        r_max = tail_cutoff(2.0 * (delta + n), 2.0 * eta)
    if r_min is None:
        r_min = r_max * 1e-6
    if not (0.0 < r_min < r_max):
        raise InvalidParameterError("grid bounds out of order")
    return r_min, r_max


def build_bound_state(
    bg: StringBackground,
    cp: CouplingSet,
    qn: QuantumNumbers,
    mode: str = "canonical",
    n_points: int = 2001,
    r_min: float | None = None,
    r_max: float | None = None,
) -> BoundState:
    """Construct the normalized profiles of level (m, k, n).

    Both columns are unit-normalized with positive leading coefficient;
    the lower profile carries n interior nodes, the upper partner lives
    at the same binding rate on the partner branch (level shifted by the
    branch offset, n + 1 when the branch shift is -1).
    """
    if n_points % 2 == 0:
        raise InvalidParameterError("n_points must be odd so Simpson applies")
    pair = bound_energy(bg, cp, qn, mode=mode)
    dc = decoupled_coefficients(bg, cp, qn, mode=mode)
    delta = dc.origin_exponent_lower
    delta_up = dc.origin_exponent_upper
    n_upper = _partner_level(pair.nu, delta_up)

    r_lo, r_hi = _grid_bounds(delta, pair.eta, qn.n, r_min, r_max)
    r = np.linspace(r_lo, r_hi, n_points)

    y_low = GridFunction(r_lo, r_hi, profile_values(delta, pair.eta, qn.n, r))
    norm_sq = y_low.with_values(y_low.values**2).integral()
    y_low = y_low.with_values(y_low.values / math.sqrt(norm_sq))

    if n_upper is None:
        # swapped-branch ground level: the partner slice vanishes identically
        y_up = y_low.with_values(np.zeros_like(r))
    else:
        y_up = GridFunction(r_lo, r_hi, profile_values(delta_up, pair.eta, n_upper, r))
        up_sq = y_up.with_values(y_up.values**2).integral()
        y_up = y_up.with_values(y_up.values / math.sqrt(up_sq))

    return BoundState(
        bg=bg,
        cp=cp,
        qn=qn,
        pair=pair,
        y_lower=y_low,
        y_upper=y_up,
        norm_constant=1.0 / math.sqrt(norm_sq),
    )


def build_exact_spinor_set(
    bg: StringBackground,
    cp: CouplingSet,
    qn: QuantumNumbers,
    n_points: int = 4001,
    r_min: float | None = None,
    r_max: float | None = None,
    alpha: float | None = None,
    fit_window: tuple[float, float] | None = None,
) -> tuple[SpinorRadialSet, float]:
    """Reconstruct all four spinor slices of a bound level so the coupled
    first-order system is satisfied.

    The mixed pair is assembled by rotating the two decoupled branch
    profiles back by half the mixing angle; the inner pair follows from
    the first-order equations themselves (it vanishes identically at
    k = 0).  The relative amplitude `alpha` between the branch profiles
    is free for k != 0 (the level is doubly degenerate there) and is
    fixed by a least-squares fit of the residuals when not supplied.
    Uses the strict energy relation, which is the one the four-slice
    system closes under.  Returns the set and the alpha actually used.
    """
    dq = derive_quantities(bg, cp, qn)
    pair = bound_energy(bg, cp, qn, mode="strict-omega2")
    dc = decoupled_coefficients(bg, cp, qn, mode="strict-omega2")
    delta = dc.origin_exponent_lower
    delta_up = dc.origin_exponent_upper
    n_upper = _partner_level(pair.nu, delta_up)

    r_lo, r_hi = _grid_bounds(delta, pair.eta, qn.n, r_min, r_max)
    r = np.linspace(r_lo, r_hi, n_points)
    g_bar = profile_values(delta, pair.eta, qn.n, r)
    g_bar = g_bar / np.max(np.abs(g_bar))
    if n_upper is None:
        f_bar = np.zeros_like(r)
    else:
        f_bar = profile_values(delta_up, pair.eta, n_upper, r)
        # keep the two raw profiles on comparable scales before fitting
        f_bar = f_bar / np.max(np.abs(f_bar))

    half = 0.5 * dq.mixing_angle
    c, s = math.cos(half), math.sin(half)
    energy = pair.energy_plus

    w = magnetic_profile(bg, cp, qn, r)
    pot = cp.mass + scalar_potential(cp, r)
    d_plus = pot + energy
    if float(np.min(np.abs(d_plus))) < 1e-9 * float(np.max(np.abs(d_plus))):
        raise InvalidParameterError(
            "mass + scalar potential + energy vanishes on the grid; "
            "the inner slices cannot be reconstructed there"
        )

    def assemble(al: float) -> SpinorRadialSet:
        f_plus = c * al * f_bar - s * g_bar
        g_minus = s * al * f_bar + c * g_bar
        fp = GridFunction(r_lo, r_hi, f_plus)
        gm = GridFunction(r_lo, r_hi, g_minus)
        if qn.k == 0.0:
            fm = fp.with_values(np.zeros_like(f_plus))
            gp = fm
        else:
            dfp = first_derivative(fp).values
            f_minus = (dfp - w * f_plus + d_plus * g_minus) / qn.k
            fm = fp.with_values(f_minus)
            dfm = first_derivative(fm).values
            g_plus = (qn.k * f_plus - dfm - w * f_minus) / d_plus
            gp = fp.with_values(g_plus)
        return SpinorRadialSet(
            bg=bg, cp=cp, qn=qn, energy=energy,
            f_plus=fp, f_minus=fm, g_plus=gp, g_minus=gm,
        )

    if alpha is None:
        if fit_window is None:
            fit_window = (r_lo + 0.05 * (r_hi - r_lo), 0.85 * r_hi)
        probe = assemble(0.0)
        mask = probe.f_plus.window_mask(*fit_window)
        res0 = np.concatenate(
            [g.values[mask] for g in first_order_residuals(probe).values()]
        )
        probe1 = assemble(1.0)
        res1 = np.concatenate(
            [g.values[mask] for g in first_order_residuals(probe1).values()]
        )
        u = res1 - res0
        uu = float(u @ u)
        alpha = 0.0 if uu == 0.0 else -float(u @ res0) / uu

    return assemble(alpha), float(alpha)


@dataclass(frozen=True)
class SpectrumRow:
    n: int
    m: int
    k: float
    delta: float
    coulomb: float
    eta: float
    energy_plus: float
    energy_minus: float
    bound: bool


def spectrum_rows(
    bg: StringBackground,
    cp: CouplingSet,
    m: int,
    k: float,
    n_max: int,
    mode: str = "canonical",
) -> list[SpectrumRow]:
    """Levels n = 0 .. n_max at fixed (m, k).  Rows that fail to bind
    (non-attractive strength or squared energy below zero) are flagged
    rather than dropped."""
    if n_max < 0:
        raise InvalidParameterError("n_max must be nonnegative")
    rows = []
    for n in range(n_max + 1):
        qn = QuantumNumbers(m=m, k=k, n=n)
        dc = decoupled_coefficients(bg, cp, qn, mode=mode)
        delta = dc.origin_exponent_lower
        eta = eta_level(dc.coulomb, delta, n)
        try:
            pair = bound_energy(bg, cp, qn, mode=mode)
            rows.append(
                SpectrumRow(
                    n=n, m=m, k=k, delta=delta, coulomb=dc.coulomb, eta=eta,
                    energy_plus=pair.energy_plus,
                    energy_minus=pair.energy_minus,
                    bound=True,
                )
            )
        except (NoBoundStateError, EvanescentEnergyError):
            rows.append(
                SpectrumRow(
                    n=n, m=m, k=k, delta=delta, coulomb=dc.coulomb, eta=eta,
                    energy_plus=float("nan"),
                    energy_minus=float("nan"),
                    bound=False,
                )
            )
    return rows


SURFACE_AXES = ("rho", "a0", "k", "m", "s1", "s2")

DEFAULT_AXIS_RANGES: dict[str, tuple[float, float]] = {
    "rho": (0.05, 1.0),
    "a0": (0.0, 15.0),
    "k": (-10.0, 10.0),
    "m": (-5.0, 5.0),
    "s1": (-2.0, 2.0),
    "s2": (-2.0, 2.0),
}


@dataclass(frozen=True)
class SurfaceResult:
    axis1: str
    axis2: str
    values1: np.ndarray
    values2: np.ndarray
    energy_plus: np.ndarray
    energy_minus: np.ndarray
    bound: np.ndarray


def _axis_values(axis: str, lo: float, hi: float, res: int) -> np.ndarray:
    if not (hi >= lo):
        raise InvalidParameterError("axis range endpoints out of order")
    if axis == "m":
        lo_i, hi_i = math.ceil(lo), math.floor(hi)
        if hi_i < lo_i:
            raise InvalidParameterError("m range contains no integers")
        return np.arange(lo_i, hi_i + 1, dtype=float)
    if res < 2:
        raise InvalidParameterError("axis resolution must be at least 2")
    return np.linspace(lo, hi, res)


def _apply_axis(
    bg: StringBackground,
    cp: CouplingSet,
    qn: QuantumNumbers,
    axis: str,
    value: float,
):
    if axis == "rho":
        return replace(bg, rho=float(value)), cp, qn
    if axis == "a0":
        return bg, replace(cp, a0=float(value)), qn
    if axis == "s1":
        return bg, replace(cp, s1=float(value)), qn
    if axis == "s2":
        return bg, replace(cp, s2=float(value)), qn
    if axis == "k":
        return bg, cp, replace(qn, k=float(value))
    if axis == "m":
        return bg, cp, replace(qn, m=int(round(value)))
    raise InvalidParameterError(f"unknown sweep axis '{axis}'")


def surface_grid(
    bg: StringBackground,
    cp: CouplingSet,
    qn: QuantumNumbers,
    axes: tuple[str, str],
    range1: tuple[float, float] | None = None,
    range2: tuple[float, float] | None = None,
    res1: int = 21,
    res2: int = 21,
    mode: str = "canonical",
) -> SurfaceResult:
    """Energies of the level qn.n over a two-axis parameter sweep.

    Points where the level does not exist are kept with NaN energies and
    a cleared bound flag."""
    a1, a2 = axes
    if a1 not in SURFACE_AXES or a2 not in SURFACE_AXES:
        raise InvalidParameterError(
            f"sweep axes must be among {', '.join(SURFACE_AXES)}"
        )
    if a1 == a2:
        raise InvalidParameterError("the two sweep axes must differ")
    lo1, hi1 = range1 if range1 is not None else DEFAULT_AXIS_RANGES[a1]
    lo2, hi2 = range2 if range2 is not None else DEFAULT_AXIS_RANGES[a2]
    v1 = _axis_values(a1, lo1, hi1, res1)
    v2 = _axis_values(a2, lo2, hi2, res2)

    ep = np.full((v1.size, v2.size), float("nan"))
    em = np.full((v1.size, v2.size), float("nan"))
    flag = np.zeros((v1.size, v2.size), dtype=bool)
    for i, x1 in enumerate(v1):
        for jdx, x2 in enumerate(v2):
            b, c, q = _apply_axis(bg, cp, qn, a1, x1)
            b, c, q = _apply_axis(b, c, q, a2, x2)
            try:
                pair = bound_energy(b, c, q, mode=mode)
            except (NoBoundStateError, EvanescentEnergyError):
                continue
            except InvalidParameterError:
                continue
            ep[i, jdx] = pair.energy_plus
            em[i, jdx] = pair.energy_minus
            flag[i, jdx] = True
    return SurfaceResult(
        axis1=a1, axis2=a2, values1=v1, values2=v2,
        energy_plus=ep, energy_minus=em, bound=flag,
    )
