"""Spectrum-generating operator triple for the decoupled radial problem.

For a branch with inverse-square strength kappa and binding rate eta the
three operators

    weight   N f = (1/(2 eta)) (-r f'' + eta^2 r f + kappa f / r)
    ladders  L(+/-) f = (-/+) r f' + eta r f - N f

close a non-compact rank-one algebra: [L+, L-] = -2 N, [L+, N] = -L+,
[L-, N] = +L-, and the combination -L+ L- + N^2 - N acts as the constant
kappa on any profile (an operator identity, not just on eigenstates).
The natural inner product is weighted by 1/r; under it N is symmetric
and the two ladders are mutual adjoints.

Eigenstates of N at rate eta are r^delta exp(-eta r) L_w^(2 delta - 1)(2 eta r)
with eigenvalue delta + w, where delta (delta - 1) = kappa.  Everything
here acts on sampled GridFunctions with second-order finite differences,
so residuals of the identities shrink like the square of the step.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import BoundaryContaminationWarning, InvalidParameterError
from .gridfn import GridFunction, first_derivative, second_derivative
from .special import laguerre_assoc, simpson

__all__ = [
    "AlgebraContext",
    "apply_weight",
    "apply_raise",
    "apply_lower",
    "casimir_apply",
    "inner_weight",
    "basis_state",
    "weight_norm_squared_closed",
    "ladder_coefficient_squared",
    "commutator_residuals",
    "adjoint_defect",
    "LadderReport",
    "ladder_report",
]

_EDGE_REL = 1e-10


@dataclass(frozen=True)
class AlgebraContext:
    """Branch data the operators depend on: binding rate eta > 0 and the
    inverse-square strength kappa = delta (delta - 1)."""

    eta: float
    kappa: float

    def __post_init__(self):
        if not (self.eta > 0.0):
            raise InvalidParameterError("binding rate eta must be positive")
        if not math.isfinite(self.kappa):
            raise InvalidParameterError("kappa must be finite")


def _check_edge(gf: GridFunction) -> None:
    peak = float(np.max(np.abs(gf.values)))
    if peak > 0.0 and abs(float(gf.values[-1])) > _EDGE_REL * peak:
        warnings.warn(
            "profile is not negligible at the outer grid edge; operator "
            "output is contaminated there",
            BoundaryContaminationWarning,
            stacklevel=3,
        )


def apply_weight(ctx: AlgebraContext, gf: GridFunction) -> GridFunction:
    _check_edge(gf)
    r = gf.r
    fpp = second_derivative(gf).values
    vals = (-r * fpp + ctx.eta**2 * r * gf.values + ctx.kappa * gf.values / r) / (
        2.0 * ctx.eta
    )
    return gf.with_values(vals)


def _apply_ladder(ctx: AlgebraContext, gf: GridFunction, sign: float) -> GridFunction:
    _check_edge(gf)
    r = gf.r
    fp = first_derivative(gf).values
    weight = apply_weight(ctx, gf).values
    vals = -sign * r * fp + ctx.eta * r * gf.values - weight
    return gf.with_values(vals)


def apply_raise(ctx: AlgebraContext, gf: GridFunction) -> GridFunction:
    return _apply_ladder(ctx, gf, +1.0)


def apply_lower(ctx: AlgebraContext, gf: GridFunction) -> GridFunction:
    return _apply_ladder(ctx, gf, -1.0)


def casimir_apply(ctx: AlgebraContext, gf: GridFunction) -> GridFunction:
    """-L+ L- f + N(N f) - N f; equals kappa * f identically."""
    lowered = apply_lower(ctx, gf)
    nf = apply_weight(ctx, gf)
    vals = (
        -apply_raise(ctx, lowered).values
        + apply_weight(ctx, nf).values
        - nf.values
    )
    return gf.with_values(vals)


def inner_weight(f: GridFunction, g: GridFunction) -> float:
    """Inner product integral f g / r dr on the shared grid."""
    if not f.same_grid(g):
        raise InvalidParameterError("inner product needs a shared grid")
    return simpson(f.values * g.values / f.r, f.h)


def basis_state(
    delta: float,
    eta: float,
    w: int,
    r_min: float,
    r_max: float,
    n_points: int,
    normalized: bool = True,
) -> GridFunction:
    """Weight eigenstate r^delta exp(-eta r) L_w^(2 delta - 1)(2 eta r),
    optionally unit-normalized under the 1/r-weighted product."""
    if delta <= 0.0 or eta <= 0.0:
        raise InvalidParameterError("delta and eta must be positive")
    if w < 0:
        raise InvalidParameterError("ladder index must be nonnegative")
    r = np.linspace(r_min, r_max, n_points)
    vals = np.exp(delta * np.log(r) - eta * r) * laguerre_assoc(
        w, 2.0 * delta - 1.0, 2.0 * eta * r
    )
    gf = GridFunction(r_min, r_max, vals)
    if normalized:
        gf = gf.with_values(gf.values / math.sqrt(inner_weight(gf, gf)))
    return gf


def weight_norm_squared_closed(delta: float, eta: float, w: int) -> float:
    """Closed form of the 1/r-weighted squared norm of the unnormalized
    basis state: (2 eta)^(-2 delta) Gamma(w + 2 delta) / w!."""
    if delta <= 0.0 or eta <= 0.0:
        raise InvalidParameterError("delta and eta must be positive")
    return (2.0 * eta) ** (-2.0 * delta) * math.gamma(w + 2.0 * delta) / math.factorial(w)


def ladder_coefficient_squared(delta: float, w: int) -> float:
    """Squared raising coefficient between unit-normalized neighbors,
    (w + 1)(2 delta + w)."""
    return (w + 1.0) * (2.0 * delta + w)


def _window_scale(gfs: list[GridFunction], mask: np.ndarray) -> float:
    return max(float(np.max(np.abs(g.values[mask]))) for g in gfs)


def commutator_residuals(
    ctx: AlgebraContext, gf: GridFunction, window: tuple[float, float]
) -> dict[str, float]:
    """Relative residuals of the algebra relations evaluated on `gf`,
    measured on a fixed physical window away from both grid edges and
    scaled by the largest composed term there."""
    mask = gf.window_mask(*window)

    rp = apply_raise(ctx, gf)
    rm = apply_lower(ctx, gf)
    nw = apply_weight(ctx, gf)

    pm = apply_raise(ctx, rm)
    mp = apply_lower(ctx, rp)
    c1 = pm.values - mp.values + 2.0 * nw.values
    s1 = _window_scale([pm, mp, nw], mask)

    pn = apply_raise(ctx, nw)
    np_ = apply_weight(ctx, rp)
    c2 = pn.values - np_.values + rp.values
    s2 = _window_scale([pn, np_, rp], mask)

    mn = apply_lower(ctx, nw)
    nm = apply_weight(ctx, rm)
    c3 = mn.values - nm.values - rm.values
    s3 = _window_scale([mn, nm, rm], mask)

    nn = apply_weight(ctx, nw)
    c4 = -pm.values + nn.values - nw.values - ctx.kappa * gf.values
    s4 = max(_window_scale([pm, nn, nw], mask), abs(ctx.kappa) * gf.max_abs())

    def rel(c: np.ndarray, s: float) -> float:
        return float(np.max(np.abs(c[mask]))) / max(s, 1e-300)

    return {
        "ladder_commutator": rel(c1, s1),
        "raise_weight_commutator": rel(c2, s2),
        "lower_weight_commutator": rel(c3, s3),
        "casimir_identity": rel(c4, s4),
    }


def adjoint_defect(ctx: AlgebraContext, f: GridFunction, g: GridFunction) -> float:
    """Relative defect of the pairing <L+ f, g> = <f, L- g> under the
    1/r-weighted product.  Both profiles must be negligible at the grid
    edges for the surface terms to vanish."""
    lhs = inner_weight(apply_raise(ctx, f), g)
    rhs = inner_weight(f, apply_lower(ctx, g))
    scale = max(abs(lhs), abs(rhs), 1e-300)
    return abs(lhs - rhs) / scale


@dataclass(frozen=True)
class LadderReport:
    weight_eigen_residual: float
    annihilation_residual: float
    raise_proportionality: float
    raise_coefficient_error: float
    orthogonality_defect: float
    norm_closed_form_error: float


def ladder_report(
    delta: float,
    eta: float,
    w: int,
    r_min: float,
    r_max: float,
    n_points: int,
    window: tuple[float, float],
) -> LadderReport:
    """Spot checks of the representation structure at one ladder site:
    eigenvalue of the weight operator, annihilation of the bottom state,
    proportionality and coefficient of the raised state, orthogonality of
    neighbors and the closed-form norm."""
    ctx = AlgebraContext(eta=eta, kappa=delta * (delta - 1.0))
    f_w = basis_state(delta, eta, w, r_min, r_max, n_points)
    f_up = basis_state(delta, eta, w + 1, r_min, r_max, n_points)
    mask = f_w.window_mask(*window)

    nw = apply_weight(ctx, f_w)
    target = (delta + w) * f_w.values
    eig_res = float(np.max(np.abs(nw.values[mask] - target[mask]))) / float(
        np.max(np.abs(target[mask]))
    )

    # annihilation is scored against the size of the terms that cancel,
    # matching how the commutator residuals are scaled
    bottom = basis_state(delta, eta, 0, r_min, r_max, n_points)
    ann = apply_lower(ctx, bottom)
    r = bottom.r
    drift = r * first_derivative(bottom).values
    pull = eta * r * bottom.values
    anchor = apply_weight(ctx, bottom).values
    ann_scale = max(
        float(np.max(np.abs(t[mask]))) for t in (drift, pull, anchor)
    )
    ann_res = float(np.max(np.abs(ann.values[mask]))) / ann_scale

    raised = apply_raise(ctx, f_w)
    coeff = inner_weight(raised, f_up)
    prop = float(np.max(np.abs(raised.values[mask] - coeff * f_up.values[mask])))
    prop_rel = prop / max(abs(coeff) * float(np.max(np.abs(f_up.values[mask]))), 1e-300)
    closed_coeff = math.sqrt(ladder_coefficient_squared(delta, w))
    coeff_err = abs(abs(coeff) - closed_coeff) / closed_coeff

    ortho = abs(inner_weight(f_w, f_up))

    raw = basis_state(delta, eta, w, r_min, r_max, n_points, normalized=False)
    closed = weight_norm_squared_closed(delta, eta, w)
    norm_err = abs(inner_weight(raw, raw) - closed) / closed

    return LadderReport(
        weight_eigen_residual=eig_res,
        annihilation_residual=ann_res,
        raise_proportionality=prop_rel,
        raise_coefficient_error=coeff_err,
        orthogonality_defect=ortho,
        norm_closed_form_error=norm_err,
    )
