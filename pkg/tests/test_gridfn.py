"""Uniform-grid sampled functions and their difference stencils."""

import numpy as np
import pytest

from stringdirac.errors import InvalidParameterError
from stringdirac.gridfn import GridFunction, first_derivative, second_derivative


def _sine(n=2001):
    r = np.linspace(0.1, 10.0, n)
    return GridFunction(0.1, 10.0, np.sin(r)), r


def test_grid_properties():
    gf, r = _sine(101)
    assert gf.n_points == 101
    assert gf.h == pytest.approx(r[1] - r[0])
    assert np.allclose(gf.r, r)


def test_validation():
    with pytest.raises(InvalidParameterError):
        GridFunction(0.0, 1.0, np.zeros(32))  # r_min must be positive
    with pytest.raises(InvalidParameterError):
        GridFunction(2.0, 1.0, np.zeros(32))
    with pytest.raises(InvalidParameterError):
        GridFunction(0.1, 1.0, np.zeros(8))  # too few samples
    with pytest.raises(InvalidParameterError):
        GridFunction(0.1, 1.0, np.array([[1.0] * 16] * 2))


def test_same_grid_and_window():
    gf, _ = _sine(201)
    other = gf.with_values(gf.values * 2.0)
    assert gf.same_grid(other)
    mask = gf.window_mask(2.0, 5.0)
    assert gf.r[mask].min() >= 2.0
    assert gf.r[mask].max() <= 5.0
    assert gf.max_abs(2.0, 5.0) == np.max(np.abs(gf.values[mask]))


def test_integral_simpson_accuracy():
    gf, _ = _sine(2001)
    exact = np.cos(0.1) - np.cos(10.0)
    assert gf.integral() == pytest.approx(exact, rel=1e-10)


def test_first_derivative_second_order():
    errs = []
    for n in (1001, 2001):
        gf, r = _sine(n)
        d = first_derivative(gf)
        errs.append(np.max(np.abs(d.values[5:-5] - np.cos(r[5:-5]))))
    assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.1)


def test_second_derivative_second_order():
    errs = []
    for n in (1001, 2001):
        gf, r = _sine(n)
        d2 = second_derivative(gf)
        errs.append(np.max(np.abs(d2.values[5:-5] + np.sin(r[5:-5]))))
    assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.1)


def test_one_sided_ends_stay_consistent():
    gf, r = _sine(4001)
    d = first_derivative(gf)
    # edge stencils are one-sided but still second order
    assert d.values[0] == pytest.approx(np.cos(r[0]), abs=1e-5)
    assert d.values[-1] == pytest.approx(np.cos(r[-1]), abs=1e-5)
