"""Polynomial special functions and quadrature used by the radial solver.

Everything here is elementary and implemented directly: the confluent
series is always terminating in this package (first argument a negative
integer), so no asymptotics or continued fractions are needed.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ConvergenceError, InvalidParameterError

__all__ = [
    "pochhammer",
    "kummer_poly",
    "laguerre_assoc",
    "laguerre_norm_squared",
    "integrate",
    "simpson",
    "tail_cutoff",
]


def pochhammer(x: float, n: int) -> float:
    """Rising factorial x (x+1) ... (x+n-1), with the empty product 1."""
    if n < 0:
        raise InvalidParameterError("pochhammer order must be nonnegative")
    out = 1.0
    for k in range(n):
        out *= x + k
    return out


def kummer_poly(n: int, b: float, z):
    """Terminating confluent hypergeometric sum 1F1(-n; b; z).

    Evaluated by the term recurrence t_{k+1} = t_k (k - n) z / ((b + k)(k + 1)),
    which is exact for polynomial degree n and works elementwise on arrays.
    Requires b > 0 so no denominator can vanish.
    """
    if n < 0:
        raise InvalidParameterError("polynomial degree must be nonnegative")
    if b <= 0.0:
        raise InvalidParameterError("second confluent parameter must be positive")
    z = np.asarray(z, dtype=float)
    term = np.ones_like(z)
    total = np.ones_like(z)
    for k in range(n):
        term = term * ((k - n) / ((b + k) * (k + 1.0))) * z
        total = total + term
    if total.ndim == 0:
        return float(total)
    return total


def laguerre_assoc(n: int, alpha: float, z):
    """Associated Laguerre polynomial L_n^(alpha)(z) by the three-term
    recurrence, elementwise on arrays.  Requires alpha > -1."""
    if n < 0:
        raise InvalidParameterError("polynomial degree must be nonnegative")
    if alpha <= -1.0:
        raise InvalidParameterError("Laguerre parameter must exceed -1")
    z = np.asarray(z, dtype=float)
    p_prev = np.ones_like(z)
    if n == 0:
        return float(p_prev) if p_prev.ndim == 0 else p_prev
    p_cur = 1.0 + alpha - z
    for k in range(1, n):
        p_next = ((2 * k + 1 + alpha - z) * p_cur - (k + alpha) * p_prev) / (k + 1.0)
        p_prev, p_cur = p_cur, p_next
    if p_cur.ndim == 0:
        return float(p_cur)
    return p_cur


def laguerre_norm_squared(n: int, alpha: float) -> float:
    """Closed form of the degree-weighted Laguerre integral

        integral_0^inf  z^(alpha+1) e^(-z) [L_n^(alpha)(z)]^2 dz
          = Gamma(n + alpha + 1) / n!  *  (2 n + alpha + 1).
    """
    if n < 0:
        raise InvalidParameterError("polynomial degree must be nonnegative")
    if alpha <= -1.0:
        raise InvalidParameterError("Laguerre parameter must exceed -1")
    return math.gamma(n + alpha + 1.0) / math.factorial(n) * (2 * n + alpha + 1.0)


def simpson(values: np.ndarray, h: float) -> float:
    """Composite Simpson rule on uniformly spaced samples.

    The sample count must be odd (an even number of panels)."""
    y = np.asarray(values, dtype=float)
    if y.ndim != 1 or y.size < 3:
        raise InvalidParameterError("need a 1-d array of at least 3 samples")
    if y.size % 2 == 0:
        raise InvalidParameterError("Simpson rule needs an even panel count")
    if h <= 0.0:
        raise InvalidParameterError("step must be positive")
    odd = y[1:-1:2].sum()
    even = y[2:-1:2].sum()
    return float(h / 3.0 * (y[0] + y[-1] + 4.0 * odd + 2.0 * even))


def integrate(f, a: float, b: float, n_panels: int = 2048) -> float:
    """Composite Simpson integral of a callable on [a, b]."""
    if n_panels <= 0 or n_panels % 2 != 0:
        raise InvalidParameterError("panel count must be positive and even")
    if not b > a:
        raise InvalidParameterError("integration interval is empty")
    x = np.linspace(a, b, n_panels + 1)
    return simpson(np.asarray(f(x), dtype=float), (b - a) / n_panels)


def tail_cutoff(exponent: float, eta: float, drop: float = 36.84) -> float:
    """Radius beyond which r^exponent * exp(-eta r) has fallen `drop`
    e-foldings below its peak.  Used to size truncation boxes for
    normalizable profiles; `drop` of 36.84 corresponds to 1e-16.
    """
    if eta <= 0.0:
        raise InvalidParameterError("decay rate must be positive")
    if exponent <= 0.0:
        # pure exponential decay from r = 0
        return drop / eta

    def log_envelope(r):
        return exponent * math.log(r) - eta * r

    r_peak = exponent / eta
    target = log_envelope(r_peak) - drop
    lo, hi = r_peak, 2.0 * r_peak
    for _ in range(200):
        if log_envelope(hi) <= target:
            break
        hi *= 2.0
    else:  # pragma: no cover - unreachable for finite inputs
        raise ConvergenceError("failed to bracket the envelope cutoff")
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if log_envelope(mid) > target:
            lo = mid
        else:
            hi = mid
    return hi
