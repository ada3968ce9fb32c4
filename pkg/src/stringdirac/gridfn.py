"""Uniform radial grids and finite-difference derivatives.

A GridFunction is a set of samples on a uniform grid strictly inside
(0, infinity).  The left endpoint is kept away from r = 0 because most
profiles in this package behave like a fractional power there.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameterError
from .special import simpson

__all__ = ["GridFunction", "first_derivative", "second_derivative"]


@dataclass(frozen=True)
class GridFunction:
    r_min: float
    r_max: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not (self.r_min > 0.0):
            raise InvalidParameterError("grid must start at a positive radius")
        if not (self.r_max > self.r_min):
            raise InvalidParameterError("grid endpoints out of order")
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or vals.size < 16:
            raise InvalidParameterError("need at least 16 samples on the grid")
        object.__setattr__(self, "values", vals)

    @property
    def n_points(self) -> int:
        return int(self.values.size)

    @property
    def h(self) -> float:
        return (self.r_max - self.r_min) / (self.n_points - 1)

    @property
    def r(self) -> np.ndarray:
        return np.linspace(self.r_min, self.r_max, self.n_points)

    def with_values(self, values: np.ndarray) -> "GridFunction":
        vals = np.asarray(values, dtype=float)
        if vals.shape != self.values.shape:
            raise InvalidParameterError("replacement values must match the grid")
        return GridFunction(self.r_min, self.r_max, vals)

    def same_grid(self, other: "GridFunction") -> bool:
        return (
            self.n_points == other.n_points
            and self.r_min == other.r_min
            and self.r_max == other.r_max
        )

    def window_mask(self, lo: float, hi: float) -> np.ndarray:
        """Boolean mask selecting samples with lo <= r <= hi."""
        r = self.r
        mask = (r >= lo) & (r <= hi)
        if not mask.any():
            raise InvalidParameterError("window does not intersect the grid")
        return mask

    def max_abs(self, lo: float | None = None, hi: float | None = None) -> float:
        if lo is None and hi is None:
            return float(np.max(np.abs(self.values)))
        mask = self.window_mask(
            self.r_min if lo is None else lo, self.r_max if hi is None else hi
        )
        return float(np.max(np.abs(self.values[mask])))

    def integral(self) -> float:
        """Simpson integral of the sampled values over [r_min, r_max]."""
        return simpson(self.values, self.h)


def first_derivative(gf: GridFunction) -> GridFunction:
    """Second-order first derivative: central differences inside, one-sided
    three-point stencils at the two edges."""
    y = gf.values
    h = gf.h
    d = np.empty_like(y)
    d[1:-1] = (y[2:] - y[:-2]) / (2.0 * h)
    d[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h)
    d[-1] = (3.0 * y[-1] - 4.0 * y[-2] + y[-3]) / (2.0 * h)
    return gf.with_values(d)


def second_derivative(gf: GridFunction) -> GridFunction:
    """Second-order second derivative; four-point one-sided ends."""
    y = gf.values
    h2 = gf.h * gf.h
    d = np.empty_like(y)
    d[1:-1] = (y[2:] - 2.0 * y[1:-1] + y[:-2]) / h2
    d[0] = (2.0 * y[0] - 5.0 * y[1] + 4.0 * y[2] - y[3]) / h2
    d[-1] = (2.0 * y[-1] - 5.0 * y[-2] + 4.0 * y[-3] - y[-4]) / h2
    return gf.with_values(d)
