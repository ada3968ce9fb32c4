"""Deterministic text renderings of results.

All numeric cells use the %.9g format, rows end with a single newline
and nothing here depends on locale or wall time, so repeated renderings
of the same data are byte-identical.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .spectrum import BoundState, SpectrumRow, SurfaceResult

__all__ = [
    "fmt_cell",
    "spectrum_csv",
    "wavefunction_csv",
    "surface_csv",
    "report_json",
]

SPECTRUM_HEADER = "n,m,k,delta,B,eta,E_plus,E_minus,bound_flag"
WAVEFUNCTION_HEADER = "r,y_lower,y_upper"


def fmt_cell(x) -> str:
    if isinstance(x, bool) or isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return "nan"
    return "%.9g" % x


def spectrum_csv(rows: list[SpectrumRow]) -> str:
    lines = [SPECTRUM_HEADER]
    for row in rows:
        lines.append(
            ",".join(
                fmt_cell(v)
                for v in (
                    row.n,
                    row.m,
                    row.k,
                    row.delta,
                    row.coulomb,
                    row.eta,
                    row.energy_plus,
                    row.energy_minus,
                    1 if row.bound else 0,
                )
            )
        )
    return "\n".join(lines) + "\n"


def wavefunction_csv(state: BoundState) -> str:
    lines = [WAVEFUNCTION_HEADER]
    r = state.r
    low = state.y_lower.values
    up = state.y_upper.values
    for i in range(r.size):
        lines.append(f"{fmt_cell(r[i])},{fmt_cell(low[i])},{fmt_cell(up[i])}")
    return "\n".join(lines) + "\n"


def surface_csv(result: SurfaceResult) -> str:
    lines = [f"{result.axis1},{result.axis2},E_plus,E_minus,flag"]
    for i, v1 in enumerate(result.values1):
        for j, v2 in enumerate(result.values2):
            lines.append(
                ",".join(
                    (
                        fmt_cell(v1),
                        fmt_cell(v2),
                        fmt_cell(result.energy_plus[i, j]),
                        fmt_cell(result.energy_minus[i, j]),
                        "1" if result.bound[i, j] else "0",
                    )
                )
            )
    return "\n".join(lines) + "\n"


def json_clean(obj):
    """Recursively replace non-finite floats with None so the result is
    strict JSON."""
    if isinstance(obj, dict):
        return {k: json_clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [json_clean(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else None
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return json_clean(obj.tolist())
    return obj


def report_json(obj) -> str:
    """Canonical JSON rendering: sorted keys, compact separators, strict
    JSON (non-finite floats become null), one trailing newline."""
    return (
        json.dumps(json_clean(obj), sort_keys=True, separators=(",", ":"),
                   allow_nan=False)
        + "\n"
    )
