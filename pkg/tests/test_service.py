"""HTTP service endpoints and the error envelope contract."""

import math

import pytest
from fastapi.testclient import TestClient

from stringdirac.service import app

client = TestClient(app, raise_server_exceptions=False)

P1 = {"rho": 1.0, "mass": 1.0, "charge": 1.0, "a0": 2.0,
      "s1": 0.0, "s2": 0.0, "m": 0, "k": 0.0, "n": 0}


def test_health():
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json()["status"] == "ok"


def test_derive_flat_reference():
    r = client.post("/derive", json={"params": P1})
    assert r.status_code == 200
    body = r.json()
    assert body["j"] == pytest.approx(0.5)
    assert body["omega"] == pytest.approx(1.0)
    assert body["coulomb_strength"] == pytest.approx(0.5)
    assert body["origin_exponent"] == pytest.approx(1.5)
    assert body["casimir_lower"] == pytest.approx(0.75)
    assert body["degenerate_branch"] is False


def test_derive_defaults_fill_in():
    # every parameter has a default; an empty params block is legal
    r = client.post("/derive", json={"params": {}})
    assert r.status_code == 200


def test_spectrum_json():
    r = client.post("/spectrum", json={"params": P1, "n_max": 2})
    assert r.status_code == 200
    body = r.json()
    assert body["mode"] == "canonical"
    rows = body["rows"]
    assert len(rows) == 3
    assert rows[0]["E_plus"] == pytest.approx(0.9428090415820634, rel=1e-12)
    assert rows[0]["bound_flag"] == 1
    assert rows[0]["B"] == pytest.approx(0.5)


def test_spectrum_csv_format():
    r = client.post("/spectrum?format=csv", json={"params": P1, "n_max": 1})
    assert r.status_code == 200
    assert r.headers["content-type"].startswith("text/csv")
    lines = r.text.splitlines()
    assert lines[0] == "n,m,k,delta,B,eta,E_plus,E_minus,bound_flag"
    assert len(lines) == 3


def test_spectrum_unbound_rows_are_null():
    unbound = dict(P1, a0=7.0)
    r = client.post("/spectrum", json={"params": unbound, "n_max": 0})
    assert r.status_code == 200
    row = r.json()["rows"][0]
    assert row["E_plus"] is None
    assert row["bound_flag"] == 0


def test_wavefunction_even_grid_rounds_up():
    r = client.post("/wavefunction", json={"params": P1, "grid_n": 200})
    assert r.status_code == 200
    body = r.json()
    assert len(body["r"]) == 201
    assert len(body["y_lower"]) == 201
    assert body["node_count_lower"] == 0
    assert body["eta"] == pytest.approx(1.0 / 3.0, rel=1e-12)
    total = sum(v * v for v in body["y_lower"])
    assert total > 0.0


def test_wavefunction_csv_header():
    r = client.post("/wavefunction?format=csv", json={"params": P1, "grid_n": 101})
    assert r.text.splitlines()[0] == "r,y_lower,y_upper"


def test_surface_shapes():
    req = {
        "params": P1,
        "axes": ["k", "a0"],
        "range1": [-2.0, 2.0],
        "range2": [1.0, 6.0],
        "res1": 4,
        "res2": 5,
    }
    r = client.post("/surface", json=req)
    assert r.status_code == 200
    body = r.json()
    assert body["axis1"] == "k" and body["axis2"] == "a0"
    assert len(body["values1"]) == 4
    assert len(body["E_plus"]) == 4
    assert len(body["E_plus"][0]) == 5
    assert all(flag in (0, 1) for row in body["flag"] for flag in row)


def test_surface_csv_header_carries_axis_names():
    req = {"params": P1, "axes": ["rho", "k"], "range1": [0.3, 1.0],
           "range2": [-1.0, 1.0], "res1": 3, "res2": 3}
    r = client.post("/surface?format=csv", json=req)
    assert r.text.splitlines()[0] == "rho,k,E_plus,E_minus,flag"


def test_oracle_endpoint():
    req = {"params": P1, "oracle_points": 6000, "n_eigen": 2, "m_values": [0]}
    r = client.post("/oracle", json=req)
    assert r.status_code == 200
    body = r.json()
    assert body["passed"] is True
    assert len(body["levels"]) == 2
    assert body["levels"][0]["rel_deviation"] <= body["tolerance"]


def test_verify_endpoint_single_suite():
    r = client.post("/verify", json={"suites": ["geometry"]})
    assert r.status_code == 200
    body = r.json()
    assert body["passed"] is True
    assert [s["name"] for s in body["suites"]] == ["geometry"]
    assert all(c["passed"] for c in body["suites"][0]["checks"])


def test_verify_unknown_suite_is_validation_error():
    r = client.post("/verify", json={"suites": ["phrenology"]})
    assert r.status_code == 422
    assert r.json()["error"]["code"] == "validation_error"


def test_unknown_field_rejected():
    bad = {"params": dict(P1, rapidity=3.0)}
    r = client.post("/derive", json=bad)
    assert r.status_code == 422
    body = r.json()
    assert body["error"]["code"] == "validation_error"
    assert "rapidity" in body["error"]["message"]


def test_invalid_rho_rejected():
    r = client.post("/derive", json={"params": dict(P1, rho=0.0)})
    assert r.status_code == 422
    assert r.json()["error"]["code"] == "validation_error"


def test_no_bound_state_envelope():
    params = dict(P1, a0=0.0)
    r = client.post("/wavefunction", json={"params": params, "grid_n": 101})
    assert r.status_code == 422
    err = r.json()["error"]
    assert err["code"] == "no_bound_state"
    assert err["threshold_energy"] == pytest.approx(1.0)


def test_evanescent_level_maps_to_no_bound_state():
    params = dict(P1, a0=7.0)
    r = client.post("/wavefunction", json={"params": params, "grid_n": 101})
    assert r.status_code == 422
    assert r.json()["error"]["code"] == "no_bound_state"


def test_bad_mode_rejected():
    r = client.post("/spectrum", json={"params": dict(P1, mode="exact")})
    assert r.status_code == 422


def test_wavefunction_swapped_branch_has_zero_partner():
    params = dict(P1, charge=-1.0, m=-1)
    r = client.post("/wavefunction", json={"params": params, "grid_n": 301})
    assert r.status_code == 200
    body = r.json()
    assert all(v == 0.0 for v in body["y_upper"])
    assert math.isclose(
        sum(v * v for v in body["y_lower"]) * (body["r"][1] - body["r"][0]),
        1.0,
        rel_tol=5e-3,
    )
