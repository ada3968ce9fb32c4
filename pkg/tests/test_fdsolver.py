"""Finite-difference eigenvalue oracle.

scipy.linalg.eigh_tridiagonal serves here as an outside referee for the
bisection solver; the package itself never imports scipy.
"""

import numpy as np
import pytest
import scipy.linalg

from stringdirac.errors import InvalidParameterError, NoBoundStateError
from stringdirac.fdsolver import (
    OracleConfig,
    cross_validate,
    fd_eigenvalues,
    lowest_eigenvalues,
    sturm_counts,
)
from stringdirac.params import CouplingSet, QuantumNumbers, StringBackground

FLAT = StringBackground(rho=1.0)
P1_CP = CouplingSet(mass=1.0, charge=1.0, a0=2.0, s1=0.0, s2=0.0)


def test_sturm_counts_are_monotone_step_functions():
    rng = np.random.default_rng(71)
    diag = rng.uniform(-1.0, 3.0, size=200)
    off = rng.uniform(-0.8, 0.8, size=199)
    full = scipy.linalg.eigh_tridiagonal(diag, off, eigvals_only=True)
    sigmas = np.linspace(full.min() - 0.5, full.max() + 0.5, 60)
    counts = sturm_counts(diag, off * off, sigmas)
    assert counts[0] == 0
    assert counts[-1] == 200
    assert np.all(np.diff(counts) >= 0)
    # the count at sigma equals the number of eigenvalues below it
    for sig, cnt in zip(sigmas[::7], counts[::7]):
        assert cnt == int(np.sum(full < sig))


def test_lowest_eigenvalues_match_scipy():
    rng = np.random.default_rng(72)
    for _ in range(5):
        size = int(rng.integers(150, 500))
        diag = rng.uniform(0.0, 4.0, size=size)
        off = rng.uniform(-1.0, 1.0, size=size - 1)
        want = scipy.linalg.eigh_tridiagonal(
            diag, off, eigvals_only=True, select="i", select_range=(0, 3)
        )
        got = lowest_eigenvalues(diag, off, 4, 1e-12, 200, 80)
        assert np.allclose(got, want, rtol=1e-10, atol=1e-10)


def test_hydrogen_like_control():
    # pure Coulomb well, zero centrifugal strength: levels -1/(n+1)^2
    lam = fd_eigenvalues(0.0, 1.0, OracleConfig(n_points=8000, n_eigen=3))
    want = np.array([-1.0, -0.25, -1.0 / 9.0])
    rel = np.abs(lam - want) / np.abs(want)
    assert np.all(rel <= 5e-4)


def test_fd_eigenvalues_guard_rails():
    with pytest.raises(NoBoundStateError):
        fd_eigenvalues(0.75, 0.0)
    with pytest.raises(NoBoundStateError):
        fd_eigenvalues(0.75, -0.5)
    with pytest.raises(InvalidParameterError):
        fd_eigenvalues(-0.3, 1.0)


def test_oracle_config_validation():
    with pytest.raises(InvalidParameterError):
        OracleConfig(n_points=10)
    with pytest.raises(InvalidParameterError):
        OracleConfig(n_eigen=0)


def test_cross_validate_flat_reference():
    rep = cross_validate(
        FLAT, P1_CP, m_values=[0, 1],
        cfg=OracleConfig(n_points=6000, n_eigen=3),
    )
    assert rep.passed
    assert rep.worst <= 5e-4
    assert len(rep.levels) == 6
    assert rep.skipped == []
    lv0 = rep.levels[0]
    assert lv0.eta_closed == pytest.approx(1.0 / 3.0, rel=1e-12)
    assert lv0.lambda_closed == pytest.approx(-1.0 / 9.0, rel=1e-12)


def test_cross_validate_skips_unbound_sectors():
    rep = cross_validate(
        FLAT, P1_CP, m_values=[-1, 0],
        cfg=OracleConfig(n_points=4000, n_eigen=2),
    )
    # j < 0 flips the Coulomb sign at these couplings; that sector is
    # recorded as skipped, never silently folded into the pass flag
    assert any(item["m"] == -1 for item in rep.skipped)
    assert all(lv.m == 0 for lv in rep.levels)
    assert rep.passed


def test_cross_validate_scalar_coupling():
    bg = StringBackground(rho=0.5)
    cp = CouplingSet(mass=1.0, charge=1.0, a0=0.0, s1=-0.5, s2=0.0)
    rep = cross_validate(
        bg, cp, m_values=[0], cfg=OracleConfig(n_points=8000, n_eigen=3)
    )
    assert rep.passed
    eta0 = np.sqrt(5.0) - 2.0
    assert rep.levels[0].eta_closed == pytest.approx(eta0, rel=1e-12)


def test_oracle_resolution_refinement():
    # doubling the grid should not move the comparison away from the
    # closed form; the deviation must shrink roughly by four
    coarse = fd_eigenvalues(0.75, 0.5, OracleConfig(n_points=2000, n_eigen=1))
    fine = fd_eigenvalues(0.75, 0.5, OracleConfig(n_points=4000, n_eigen=1))
    lam_exact = -(0.5 / 1.5) ** 2
    err_c = abs(coarse[0] - lam_exact)
    err_f = abs(fine[0] - lam_exact)
    assert err_c / err_f == pytest.approx(4.0, rel=0.25)
