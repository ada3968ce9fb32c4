"""Discrete realization of the spectrum-generating ladder algebra.

Operator identities are exact in the continuum; on the grid they hold to
the accuracy of the difference stencils, so every residual check comes
with a refinement companion that pins the h^2 rate.
"""

import math

import numpy as np
import pytest

from stringdirac.algebra import (
    AlgebraContext,
    adjoint_defect,
    apply_lower,
    apply_raise,
    apply_weight,
    basis_state,
    casimir_apply,
    commutator_residuals,
    inner_weight,
    ladder_coefficient_squared,
    ladder_report,
    weight_norm_squared_closed,
)
from stringdirac.errors import BoundaryContaminationWarning, InvalidParameterError
from stringdirac.gridfn import GridFunction

R_MIN, R_MAX = 0.05, 40.0
WINDOW = (1.0, 25.0)


def _probe(n_points):
    r = np.linspace(R_MIN, R_MAX, n_points)
    vals = np.exp(4.8 * np.log(r) - 1.4 * r) + 0.6 * np.exp(5.6 * np.log(r) - 1.7 * r)
    return GridFunction(R_MIN, R_MAX, vals)


def test_commutator_residuals_small_and_h2():
    ctx = AlgebraContext(eta=1.2, kappa=6.0)
    res_fine = commutator_residuals(ctx, _probe(8192), window=WINDOW)
    res_coarse = commutator_residuals(ctx, _probe(4096), window=WINDOW)
    assert set(res_fine) == {
        "ladder_commutator",
        "raise_weight_commutator",
        "lower_weight_commutator",
        "casimir_identity",
    }
    for name, val in res_fine.items():
        assert val < 5e-6, f"{name}: {val:.3e}"
        assert res_coarse[name] / val == pytest.approx(4.0, rel=0.15), name


def test_casimir_identity_profile_independent():
    # -L+ L- + N^2 - N = kappa on any profile, not only eigenstates
    for kappa in (0.75, 3.0, 8.25):
        ctx = AlgebraContext(eta=0.9, kappa=kappa)
        f = _probe(8192)
        cas = casimir_apply(ctx, f)
        mask = f.window_mask(*WINDOW)
        scale = kappa * float(np.max(np.abs(f.values[mask])))
        dev = float(np.max(np.abs(cas.values[mask] - kappa * f.values[mask])))
        assert dev / scale < 1e-4


def test_weight_eigenvalue_on_basis_states():
    delta, eta = 4.2, 1.25
    ctx = AlgebraContext(eta=eta, kappa=delta * (delta - 1.0))
    for w in range(0, 4):
        f = basis_state(delta, eta, w, R_MIN, R_MAX, 8193)
        nf = apply_weight(ctx, f)
        mask = f.window_mask(*WINDOW)
        dev = np.max(np.abs(nf.values[mask] - (delta + w) * f.values[mask]))
        assert dev / np.max(np.abs(f.values)) < 5e-5


def test_ladder_report_fields():
    rep = ladder_report(delta=4.2, eta=1.1, w=1,
                        r_min=R_MIN, r_max=R_MAX, n_points=8193,
                        window=WINDOW)
    assert rep.weight_eigen_residual < 1e-5
    assert rep.annihilation_residual < 1e-5
    assert rep.raise_proportionality < 1e-5
    assert rep.raise_coefficient_error < 1e-5
    assert rep.orthogonality_defect < 1e-6
    assert rep.norm_closed_form_error < 1e-6


def test_raise_lower_roundtrip_coefficient():
    # L- L+ f_w = (w + 1)(2 delta + w) f_w on the ladder
    delta, eta, w = 4.0, 1.3, 1
    ctx = AlgebraContext(eta=eta, kappa=delta * (delta - 1.0))
    f = basis_state(delta, eta, w, R_MIN, R_MAX, 8193)
    back = apply_lower(ctx, apply_raise(ctx, f))
    coeff = ladder_coefficient_squared(delta, w)
    assert coeff == (w + 1) * (2 * delta + w)
    mask = f.window_mask(*WINDOW)
    dev = np.max(np.abs(back.values[mask] - coeff * f.values[mask]))
    assert dev / (coeff * np.max(np.abs(f.values))) < 5e-5


def test_weight_norm_closed_form():
    delta, eta = 3.75, 0.8
    for w in range(0, 4):
        f = basis_state(delta, eta, w, R_MIN, R_MAX, 8193, normalized=False)
        closed = weight_norm_squared_closed(delta, eta, w)
        want = (2.0 * eta) ** (-2.0 * delta) * math.gamma(w + 2.0 * delta) / math.factorial(w)
        assert closed == pytest.approx(want, rel=1e-13)
        assert inner_weight(f, f) == pytest.approx(closed, rel=1e-6)


def test_basis_states_orthogonal_under_weight():
    delta, eta = 4.1, 1.0
    f0 = basis_state(delta, eta, 0, R_MIN, R_MAX, 8193)
    f1 = basis_state(delta, eta, 1, R_MIN, R_MAX, 8193)
    f2 = basis_state(delta, eta, 2, R_MIN, R_MAX, 8193)
    n0 = math.sqrt(inner_weight(f0, f0))
    n1 = math.sqrt(inner_weight(f1, f1))
    n2 = math.sqrt(inner_weight(f2, f2))
    assert abs(inner_weight(f0, f1)) / (n0 * n1) < 1e-7
    assert abs(inner_weight(f1, f2)) / (n1 * n2) < 1e-7
    assert abs(inner_weight(f0, f2)) / (n0 * n2) < 1e-7


def test_adjoint_defect_small():
    ctx = AlgebraContext(eta=1.2, kappa=6.0)
    r = np.linspace(R_MIN, R_MAX, 8193)
    f = GridFunction(R_MIN, R_MAX, np.exp(3.9 * np.log(r) - 1.5 * r))
    g = GridFunction(R_MIN, R_MAX, np.exp(4.4 * np.log(r) - 1.2 * r))
    assert adjoint_defect(ctx, f, g) < 1e-5


def test_boundary_contamination_warning():
    # a profile still visibly nonzero at r_max must be reported
    ctx = AlgebraContext(eta=1.0, kappa=2.0)
    r = np.linspace(R_MIN, R_MAX, 2048)
    slow = GridFunction(R_MIN, R_MAX, np.exp(2.0 * np.log(r) - 0.1 * r))
    with pytest.warns(BoundaryContaminationWarning):
        apply_weight(ctx, slow)
    ok = GridFunction(R_MIN, R_MAX, np.exp(2.0 * np.log(r) - 1.5 * r))
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("error")
        apply_weight(ctx, ok)


def test_algebra_validation():
    with pytest.raises(InvalidParameterError):
        AlgebraContext(eta=0.0, kappa=1.0)
    with pytest.raises(InvalidParameterError):
        basis_state(-1.0, 1.0, 0, R_MIN, R_MAX, 512)
    f = _probe(512)
    g = _probe(1024)
    with pytest.raises(InvalidParameterError):
        inner_weight(f, g)  # mismatched grids cannot be paired
