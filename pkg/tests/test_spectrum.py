"""Closed-form spectrum, bound-state construction, and parameter sweeps."""

import math

import numpy as np
import pytest
import scipy.integrate

from stringdirac.errors import (
    EvanescentEnergyError,
    InvalidParameterError,
    NoBoundStateError,
)
from stringdirac.params import CouplingSet, QuantumNumbers, StringBackground
from stringdirac.spectrum import (
    bound_energy,
    build_bound_state,
    build_exact_spinor_set,
    eta_level,
    node_count,
    norm_squared_closed,
    profile_values,
    spectrum_rows,
    surface_grid,
)
from stringdirac.tables import spectrum_csv, surface_csv

FLAT = StringBackground(rho=1.0)
P1_CP = CouplingSet(mass=1.0, charge=1.0, a0=2.0, s1=0.0, s2=0.0)
P1_QN = QuantumNumbers(m=0, k=0.0, n=0)

CONE = StringBackground(rho=0.5)
SCALAR_CP = CouplingSet(mass=1.0, charge=1.0, a0=0.0, s1=-0.5, s2=0.0)


def test_flat_reference_level():
    pair = bound_energy(FLAT, P1_CP, P1_QN)
    assert pair.eta == pytest.approx(1.0 / 3.0, rel=1e-14)
    assert pair.nu == pytest.approx(1.5, rel=1e-14)
    # E = sqrt(1 - (1/3)^2) = sqrt(8)/3
    assert pair.energy_plus == pytest.approx(0.9428090415820634, abs=1e-13)
    assert pair.energy_minus == pytest.approx(-pair.energy_plus, rel=1e-15)
    assert pair.mode == "canonical"


def test_scalar_reference_level():
    pair = bound_energy(CONE, SCALAR_CP, P1_QN)
    eta0 = math.sqrt(5.0) - 2.0
    assert pair.eta == pytest.approx(eta0, rel=1e-12)
    assert pair.energy_plus == pytest.approx(0.9717365435132915, abs=1e-12)


def test_level_sequence_monotone():
    # eta falls with n, so the bound levels accumulate at the mass gap
    etas, energies = [], []
    for n in range(5):
        pair = bound_energy(FLAT, P1_CP, QuantumNumbers(m=0, k=0.0, n=n))
        etas.append(pair.eta)
        energies.append(pair.energy_plus)
    assert all(a > b for a, b in zip(etas, etas[1:]))
    assert all(a < b for a, b in zip(energies, energies[1:]))
    assert all(e < 1.0 for e in energies)


def test_mode_offset_relation():
    cp = CouplingSet(mass=1.0, charge=1.0, a0=4.0, s1=0.3, s2=0.1)
    qn = QuantumNumbers(m=1, k=0.5, n=0)
    canon = bound_energy(FLAT, cp, qn, mode="canonical")
    strict = bound_energy(FLAT, cp, qn, mode="strict-omega2")
    assert canon.eta == pytest.approx(strict.eta, rel=1e-15)
    gap = strict.energy_plus**2 - canon.energy_plus**2
    assert gap == pytest.approx((cp.mass * cp.omega) ** 2, rel=1e-12)


def test_no_bound_state_when_strength_vanishes():
    cp = CouplingSet(mass=1.0, charge=1.0, a0=0.0, s1=0.0, s2=0.0)
    with pytest.raises(NoBoundStateError) as exc_info:
        bound_energy(FLAT, cp, P1_QN)
    # threshold reported so callers can show where the continuum starts
    assert exc_info.value.threshold_energy == pytest.approx(1.0)


def test_no_bound_state_when_strength_repulsive():
    qn = QuantumNumbers(m=-1, k=0.0, n=0)  # j < 0 flips the sign of B
    with pytest.raises(NoBoundStateError):
        bound_energy(FLAT, P1_CP, qn)


def test_evanescent_level_rejected():
    # strong field: eta_0 = B / delta exceeds the k = 0 mass gap
    cp = CouplingSet(mass=1.0, charge=1.0, a0=7.0, s1=0.0, s2=0.0)
    with pytest.raises(EvanescentEnergyError):
        bound_energy(FLAT, cp, P1_QN)
    # same configuration binds once k lifts the offset
    pair = bound_energy(FLAT, cp, QuantumNumbers(m=0, k=2.0, n=0))
    assert pair.energy_plus > 0.0


def test_eta_level_validation():
    with pytest.raises(InvalidParameterError):
        eta_level(0.5, 1.5, -1)


def test_norm_squared_closed_against_quad():
    rng = np.random.default_rng(55)
    for _ in range(25):
        delta = float(rng.uniform(0.6, 4.0))
        eta = float(rng.uniform(0.2, 2.0))
        n = int(rng.integers(0, 5))
        val, _ = scipy.integrate.quad(
            lambda r: profile_values(delta, eta, n, np.array([r]))[0] ** 2,
            0.0,
            300.0,
            limit=300,
        )
        assert norm_squared_closed(delta, eta, n) == pytest.approx(val, rel=1e-8)


def test_flat_reference_norm_value():
    # (2/3)^-4 * Gamma(3) * 3 / 2 / (2/3) = 30.375 exactly
    assert norm_squared_closed(1.5, 1.0 / 3.0, 0) == pytest.approx(30.375, abs=1e-12)


def test_node_counts_match_level_index():
    for n in range(0, 5):
        qn = QuantumNumbers(m=0, k=0.0, n=n)
        st = build_bound_state(FLAT, P1_CP, qn, n_points=4001)
        assert node_count(st.y_lower) == n


def test_bound_state_unit_norms():
    st = build_bound_state(FLAT, P1_CP, QuantumNumbers(m=0, k=0.0, n=1), n_points=6001)
    low_sq = st.y_lower.with_values(st.y_lower.values**2).integral()
    up_sq = st.y_upper.with_values(st.y_upper.values**2).integral()
    assert low_sq == pytest.approx(1.0, rel=1e-9)
    assert up_sq == pytest.approx(1.0, rel=1e-9)
    # norm constant reproduces the closed form
    pair = st.pair
    assert st.norm_constant == pytest.approx(
        1.0 / math.sqrt(norm_squared_closed(1.5, pair.eta, 1)), rel=1e-8
    )


def test_bound_state_rejects_even_grid():
    with pytest.raises(InvalidParameterError):
        build_bound_state(FLAT, P1_CP, P1_QN, n_points=2000)


def test_swapped_branch_ground_level_has_empty_partner():
    # s1 = 0 with j < 0: the shared rate sits one rung below the partner
    # ladder at n = 0, so the partner profile vanishes identically
    cp = CouplingSet(mass=1.0, charge=-1.0, a0=2.0, s1=0.0, s2=0.0)
    qn = QuantumNumbers(m=-1, k=0.0, n=0)
    st = build_bound_state(FLAT, cp, qn, n_points=3001)
    assert np.all(st.y_upper.values == 0.0)
    assert node_count(st.y_lower) == 0
    # the first excited level has a real partner again
    st1 = build_bound_state(
        FLAT, cp, QuantumNumbers(m=-1, k=0.0, n=1), n_points=3001
    )
    assert float(np.max(np.abs(st1.y_upper.values))) > 0.0


def test_exact_spinor_alpha_freedom_at_nonzero_k():
    bg = StringBackground(rho=0.8)
    cp = CouplingSet(mass=1.0, charge=1.0, a0=3.0, s1=0.4, s2=0.2)
    qn = QuantumNumbers(m=1, k=0.7, n=1)
    _, alpha_fit = build_exact_spinor_set(bg, cp, qn, n_points=4001)
    sset, alpha_forced = build_exact_spinor_set(
        bg, cp, qn, n_points=4001, alpha=alpha_fit
    )
    assert alpha_forced == alpha_fit
    assert sset.f_plus.n_points == 4001


def test_spectrum_rows_keep_unbound_levels():
    cp = CouplingSet(mass=1.0, charge=1.0, a0=7.0, s1=0.0, s2=0.0)
    rows = spectrum_rows(FLAT, cp, m=0, k=0.0, n_max=4)
    assert len(rows) == 5
    assert not rows[0].bound and math.isnan(rows[0].energy_plus)
    # higher n relaxes eta below the gap and the level binds
    assert rows[4].bound
    with pytest.raises(InvalidParameterError):
        spectrum_rows(FLAT, cp, m=0, k=0.0, n_max=-1)


def test_spectrum_csv_shape():
    rows = spectrum_rows(FLAT, P1_CP, m=0, k=0.0, n_max=2)
    text = spectrum_csv(rows)
    lines = text.splitlines()
    assert lines[0] == "n,m,k,delta,B,eta,E_plus,E_minus,bound_flag"
    assert len(lines) == 4
    assert text.endswith("\n")
    first = lines[1].split(",")
    assert first[0] == "0" and first[-1] == "1"
    assert float(first[6]) == pytest.approx(0.9428090415820634, rel=1e-9)


def test_surface_grid_shapes_and_flags():
    res = surface_grid(
        FLAT, P1_CP, P1_QN, axes=("k", "a0"),
        range1=(-2.0, 2.0), range2=(0.0, 8.0), res1=5, res2=7,
    )
    assert res.energy_plus.shape == (5, 7)
    assert res.bound.shape == (5, 7)
    # a0 = 0 column never binds, interior columns mostly do
    assert not res.bound[:, 0].any()
    assert res.bound[:, 1:].sum() > 0
    nan_mask = np.isnan(res.energy_plus)
    assert np.array_equal(~nan_mask, res.bound)


def test_surface_integer_axis_enumerates():
    res = surface_grid(
        FLAT, P1_CP, QuantumNumbers(m=0, k=0.0, n=0),
        axes=("m", "k"), range1=(-2.2, 2.7), range2=(-1.0, 1.0),
        res1=50, res2=3,
    )
    assert np.array_equal(res.values1, np.arange(-2.0, 3.0))


def test_surface_axis_validation():
    with pytest.raises(InvalidParameterError):
        surface_grid(FLAT, P1_CP, P1_QN, axes=("k", "k"))
    with pytest.raises(InvalidParameterError):
        surface_grid(FLAT, P1_CP, P1_QN, axes=("k", "banana"))
    with pytest.raises(InvalidParameterError):
        surface_grid(FLAT, P1_CP, P1_QN, axes=("k", "a0"), res1=1)


def test_surface_k_independence_of_binding():
    # E+^2 - k^2 depends on (m, n, couplings) only; k enters through the
    # offset alone, which the sweep must preserve column by column
    res = surface_grid(
        FLAT, P1_CP, P1_QN, axes=("k", "a0"),
        range1=(-3.0, 3.0), range2=(1.0, 6.0), res1=9, res2=6,
    )
    k = res.values1[:, None]
    shifted = res.energy_plus**2 - k**2
    spread = np.nanmax(shifted, axis=0) - np.nanmin(shifted, axis=0)
    assert np.all(spread[np.isfinite(spread)] <= 1e-10)


def test_surface_rerun_byte_identical():
    kwargs = dict(
        axes=("rho", "a0"), range1=(0.2, 1.0), range2=(1.0, 6.0),
        res1=6, res2=6,
    )
    a = surface_csv(surface_grid(FLAT, P1_CP, P1_QN, **kwargs))
    b = surface_csv(surface_grid(FLAT, P1_CP, P1_QN, **kwargs))
    assert a.encode() == b.encode()
    assert a.splitlines()[0] == "rho,a0,E_plus,E_minus,flag"
