"""Command-line client.

Every subcommand builds one HTTP request against the service and renders
the response.  By default the service runs in-process over an ASGI
transport; --server points the same client at a remote instance, so
outputs are identical either way.

Parameter precedence: built-in defaults, then a JSON --config file whose
keys equal the long flag names without leading dashes, then explicit
flags.  Structured errors go to stderr as a JSON envelope; exit codes:
0 success, 1 failed verification or internal error, 2 invalid
parameters, 3 requested state does not exist, 64 malformed config file.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import os
import sys
from pathlib import Path

import httpx

from .tables import report_json

_EXIT_BY_CODE = {
    "validation_error": 2,
    "degenerate_branch": 2,
    "no_bound_state": 3,
    "malformed_config": 64,
    "convergence_failure": 1,
}

PARAM_KEYS: dict[str, type] = {
    "rho": float,
    "mass": float,
    "charge": float,
    "a0": float,
    "s1": float,
    "s2": float,
    "m": int,
    "k": float,
    "n": int,
    "mode": str,
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2) with plain text
        raise _UsageError(message)


def _fail(code: str, message: str, exit_code: int | None = None) -> int:
    sys.stderr.write(report_json({"error": {"code": code, "message": message}}))
    return exit_code if exit_code is not None else _EXIT_BY_CODE.get(code, 1)


def _add_param_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rho", type=float, default=None)
    p.add_argument("--mass", type=float, default=None)
    p.add_argument("--charge", type=float, default=None)
    p.add_argument("--a0", type=float, default=None)
    p.add_argument("--s1", type=float, default=None)
    p.add_argument("--s2", type=float, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--k", type=float, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--mode", choices=["canonical", "strict-omega2"], default=None)


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", default=None)
    p.add_argument("--server", default=None)
    p.add_argument("--out", default=None)


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="sds", description="bound states near a conical defect")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive", parents=[], help="derived constants as JSON")
    _add_param_flags(p)
    _add_common_flags(p)

    p = sub.add_parser("spectrum", help="levels 0..n at fixed (m, k)")
    _add_param_flags(p)
    _add_common_flags(p)
    p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("wavefunction", help="radial profiles of one level")
    _add_param_flags(p)
    _add_common_flags(p)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--grid-n", dest="grid_n", type=int, default=None)
    p.add_argument("--r-max", dest="r_max", type=float, default=None)

    p = sub.add_parser("surface", help="energy sweep over two parameter axes")
    _add_param_flags(p)
    _add_common_flags(p)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--axes", default=None, help="two axis names, e.g. k,a0")
    p.add_argument("--range1", default=None, help="lo,hi for the first axis")
    p.add_argument("--range2", default=None, help="lo,hi for the second axis")
    p.add_argument("--res1", type=int, default=None)
    p.add_argument("--res2", type=int, default=None)

    p = sub.add_parser("oracle", help="finite-difference cross-check")
    _add_param_flags(p)
    _add_common_flags(p)
    p.add_argument("--grid-n", dest="grid_n", type=int, default=None)
    p.add_argument("--r-max", dest="r_max", type=float, default=None)
    p.add_argument("--n-eigen", dest="n_eigen", type=int, default=None)
    p.add_argument("--m-list", dest="m_list", default=None,
                   help="comma-separated angular indices to sweep")
    p.add_argument("--tolerance", type=float, default=None)

    p = sub.add_parser("verify", help="self-verification suites")
    _add_common_flags(p)
    p.add_argument("--geometry", action="store_true")
    p.add_argument("--identities", action="store_true")
    p.add_argument("--algebra", action="store_true")
    p.add_argument("--wavefunctions", action="store_true")
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--oracle-points", dest="oracle_points", type=int, default=None)
    p.add_argument("--algebra-points", dest="algebra_points", type=int, default=None)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return top


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise _UsageError(f"cannot read config file: {exc}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _ConfigError(f"config file is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise _ConfigError("config file must hold a JSON object")
    return data


class _ConfigError(Exception):
    pass


def _merge(args: argparse.Namespace, config: dict, keys: dict[str, str]) -> dict:
    """Resolve each known config key against its flag; flags win.  Returns
    {dest: value} for everything that ended up set."""
    for key in config:
        if key not in keys:
            raise _UsageError(f"unknown config key '{key}'")
    merged = {}
    for key, dest in keys.items():
        flag_val = getattr(args, dest, None)
        # identity checks: 0 and 0.0 are legitimate flag values and must
        # not be confused with an unset flag (None) or store_true False
        if flag_val is None or flag_val is False:
            val = config.get(key)
        else:
            val = flag_val
        if val is not None and val is not False:
            merged[dest] = val
    return merged


def _param_block(merged: dict) -> dict:
    params = {}
    for key, conv in PARAM_KEYS.items():
        if key in merged:
            try:
                params[key] = conv(merged[key]) if key != "mode" else str(merged[key])
            except (TypeError, ValueError):
                raise _UsageError(f"parameter '{key}' has an invalid value")
    return params


def _pair(text, what: str) -> list[float]:
    if isinstance(text, (list, tuple)):
        vals = list(text)
    else:
        vals = str(text).split(",")
    if len(vals) != 2:
        raise _UsageError(f"{what} needs exactly two comma-separated values")
    try:
        return [float(v) for v in vals]
    except ValueError:
        raise _UsageError(f"{what} values must be numeric")


def _int_list(text) -> list[int]:
    if isinstance(text, (list, tuple)):
        return [int(v) for v in text]
    try:
        return [int(v) for v in str(text).split(",") if v != ""]
    except ValueError:
        raise _UsageError("m-list must hold integers")


async def _send(server: str | None, method: str, path: str,
                body: dict | None, params: dict | None):
    if server:
        async with httpx.AsyncClient(base_url=server, timeout=600.0) as client:
            resp = await client.request(method, path, json=body, params=params)
            return resp.status_code, resp.text
    from .service.app import app

    transport = httpx.ASGITransport(app=app)
    async with httpx.AsyncClient(
        transport=transport, base_url="http://stringdirac.local", timeout=None
    ) as client:
        resp = await client.request(method, path, json=body, params=params)
        return resp.status_code, resp.text


def _deliver(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    target = Path(out)
    root = os.environ.get("SDS_OUT")
    if root and not target.is_absolute():
        target = Path(root) / target
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text)


def _handle_error_body(status: int, text: str) -> int:
    try:
        body = json.loads(text)
        err = body["error"]
        code = str(err.get("code", "internal_error"))
        message = str(err.get("message", ""))
    except (json.JSONDecodeError, KeyError, TypeError):
        return _fail("internal_error", f"service returned status {status}")
    return _fail(code, message)


def _run_command(path: str, body: dict, fmt: str | None,
                 server: str | None, out: str | None,
                 gate_on_passed: bool = False) -> int:
    params = {"format": fmt} if fmt else None
    status, text = asyncio.run(_send(server, "POST", path, body, params))
    if status != 200:
        return _handle_error_body(status, text)
    _deliver(text, out)
    if gate_on_passed:
        try:
            if not json.loads(text).get("passed", False):
                return 1
        except json.JSONDecodeError:
            return 1
    return 0


_COMMON_KEYS = {"config": "config", "server": "server", "out": "out"}


def _keys_for(command: str) -> dict[str, str]:
    keys = dict(_COMMON_KEYS)
    if command in ("derive", "spectrum", "wavefunction", "surface", "oracle"):
        keys.update({k: k for k in PARAM_KEYS})
    if command in ("spectrum", "wavefunction", "surface"):
        keys["format"] = "format"
    if command in ("wavefunction", "oracle"):
        keys["grid-n"] = "grid_n"
        keys["r-max"] = "r_max"
    if command == "oracle":
        keys["n-eigen"] = "n_eigen"
        keys["m-list"] = "m_list"
        keys["tolerance"] = "tolerance"
    if command == "surface":
        keys.update(
            {"axes": "axes", "range1": "range1", "range2": "range2",
             "res1": "res1", "res2": "res2"}
        )
    if command == "verify":
        keys.update(
            {"seed": "seed", "oracle-points": "oracle_points",
             "algebra-points": "algebra_points"}
        )
        for s in ("geometry", "identities", "algebra", "wavefunctions", "oracle"):
            keys[s] = s
    return keys


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        return _fail("validation_error", str(exc))

    try:
        config = _load_config(getattr(args, "config", None))
        merged = _merge(args, config, _keys_for(args.command))
    except _ConfigError as exc:
        return _fail("malformed_config", str(exc))
    except _UsageError as exc:
        return _fail("validation_error", str(exc))

    server = merged.get("server")
    out = merged.get("out")

    try:
        if args.command == "serve":
            import uvicorn

            from .service.app import app

            uvicorn.run(app, host=args.host, port=args.port)
            return 0

        if args.command == "derive":
            body = {"params": _param_block(merged)}
            return _run_command("/derive", body, None, server, out)

        if args.command == "spectrum":
            body = {"params": _param_block(merged)}
            return _run_command(
                "/spectrum", body, merged.get("format", "csv"), server, out
            )

        if args.command == "wavefunction":
            body = {"params": _param_block(merged)}
            if "grid_n" in merged:
                body["grid_n"] = int(merged["grid_n"])
            if "r_max" in merged:
                body["r_max"] = float(merged["r_max"])
            return _run_command(
                "/wavefunction", body, merged.get("format", "csv"), server, out
            )

        if args.command == "surface":
            if "axes" not in merged:
                return _fail("validation_error", "surface needs --axes")
            axes = merged["axes"]
            axes = list(axes) if isinstance(axes, (list, tuple)) else str(axes).split(",")
            if len(axes) != 2:
                return _fail("validation_error", "--axes needs two names")
            body = {"params": _param_block(merged), "axes": axes}
            if "range1" in merged:
                body["range1"] = _pair(merged["range1"], "range1")
            if "range2" in merged:
                body["range2"] = _pair(merged["range2"], "range2")
            if "res1" in merged:
                body["res1"] = int(merged["res1"])
            if "res2" in merged:
                body["res2"] = int(merged["res2"])
            return _run_command(
                "/surface", body, merged.get("format", "csv"), server, out
            )

        if args.command == "oracle":
            body = {"params": _param_block(merged)}
            if "grid_n" in merged:
                body["oracle_points"] = int(merged["grid_n"])
            if "r_max" in merged:
                body["r_max"] = float(merged["r_max"])
            if "n_eigen" in merged:
                body["n_eigen"] = int(merged["n_eigen"])
            if "m_list" in merged:
                body["m_values"] = _int_list(merged["m_list"])
            if "tolerance" in merged:
                body["tolerance"] = float(merged["tolerance"])
            return _run_command("/oracle", body, None, server, out,
                                gate_on_passed=True)

        if args.command == "verify":
            suites = [
                s
                for s in ("geometry", "identities", "algebra", "wavefunctions",
                          "oracle")
                if merged.get(s)
            ]
            body: dict = {}
            if suites:
                body["suites"] = suites
            if "seed" in merged:
                body["seed"] = int(merged["seed"])
            if "oracle_points" in merged:
                body["oracle_points"] = int(merged["oracle_points"])
            if "algebra_points" in merged:
                body["algebra_points"] = int(merged["algebra_points"])
            return _run_command("/verify", body, None, server, out,
                                gate_on_passed=True)
    except _UsageError as exc:
        return _fail("validation_error", str(exc))
    except httpx.HTTPError as exc:
        return _fail("connection_error", str(exc))

    return _fail("internal_error", f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
