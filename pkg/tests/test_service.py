"""HTTP surface: routes, payload shapes, and the error contract."""

import math

import numpy as np
import pytest
from fastapi.testclient import TestClient

from growthlab.service.app import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


def exp_series(n=11, r=0.02, s0=100.0, t0=2000.0):
    times = [t0 + k for k in range(n)]
    values = [s0 * math.exp(r * k) for k in range(n)]
    return {"times": times, "values": values}


def test_health(client):
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json() == {"status": "ok"}


def test_rates_rows(client):
    values = [100.0 * 1.1**k for k in range(5)]
    r = client.post(
        "/rates",
        json={"series": {"times": [2000, 2001, 2002, 2003, 2004], "values": values}},
    )
    assert r.status_code == 200
    rows = r.json()["rows"]
    assert [row["year"] for row in rows] == [2000.0, 2001.0, 2002.0, 2003.0, 2004.0]
    assert rows[0]["direct_rate"] is None  # nothing before the first datum
    for row in rows[1:]:
        assert row["direct_rate"] == pytest.approx(0.1, rel=1e-12)
    assert all(isinstance(row["smoothed_rate"], float) for row in rows)


def test_fit_exponential_in_log_size_space(client):
    r = client.post(
        "/fit", json={"series": exp_series(), "space": "log-size-vs-time"}
    )
    assert r.status_code == 200
    body = r.json()
    assert body["kind"] == "exponential"
    assert body["parameters"]["r"] == pytest.approx(0.02, rel=1e-10)
    assert body["parameters"]["C"] > 0.0
    assert body["space"] == "log-size-vs-time"
    assert body["window"] == {"t_start": 2000.0, "t_end": 2010.0}
    assert body["line"]["n"] == 11
    assert body["diagnostics"]["singularity_time"] is None
    assert body["origin_line"] is None


def test_fit_respects_explicit_anchor(client):
    r = client.post(
        "/fit",
        json={
            "series": exp_series(),
            "space": "log-size-vs-time",
            "anchor": {"year": 2010.0, "value": 500.0},
        },
    )
    body = r.json()
    model_c = body["parameters"]["C"]
    assert model_c * math.exp(body["parameters"]["r"] * 2010.0) == pytest.approx(
        500.0, rel=1e-10
    )


def test_project_explicit_model_record(client):
    r = client.post(
        "/project",
        json={
            "grid": {"start": 2000.0, "end": 2040.0, "step": 1.0},
            "model": {"kind": "hyperbolic", "parameters": {"b": 2.155e-3, "C": 4.376}},
        },
    )
    assert r.status_code == 200
    (result,) = r.json()["results"]
    assert result["kind"] == "hyperbolic"
    # parameters survive the JSON round trip bit-for-bit
    assert result["parameters"] == {"b": 2.155e-3, "C": 4.376}
    assert result["diagnostics"]["singularity_time"] == pytest.approx(
        4.376 / 2.155e-3, rel=1e-12
    )
    rows = {row["year"]: row for row in result["rows"]}
    assert len(rows) == 41
    assert rows[2000.0]["flag"] == "valid"
    assert rows[2000.0]["value"] == pytest.approx(15.1515, rel=1e-4)
    assert rows[2035.0]["flag"] == "beyond_singularity"
    assert rows[2035.0]["value"] is None


def test_project_scenario_rate_needs_only_anchor(client):
    r = client.post(
        "/project",
        json={
            "grid": {"start": 2014.0, "end": 2100.0, "step": 86.0},
            "scenario_rate": 0.025,
            "anchor": {"year": 2014.0, "value": 5.0e13},
        },
    )
    assert r.status_code == 200
    (result,) = r.json()["results"]
    assert result["kind"] == "exponential"
    rows = result["rows"]
    assert rows[0]["value"] == pytest.approx(5.0e13, rel=1e-12)
    assert rows[1]["value"] == pytest.approx(5.0e13 * math.exp(0.025 * 86.0), rel=1e-12)


def test_project_with_nothing_to_project(client):
    r = client.post("/project", json={"grid": {"start": 2000.0, "end": 2010.0}})
    assert r.status_code == 422
    err = r.json()["error"]
    assert err["module"] == "forecast"
    assert err["type"] == "InvalidParameter"
    assert "nothing to project" in err["message"]


def test_compare_explicit_records(client):
    r = client.post(
        "/compare",
        json={
            "grid": {"start": 2000.0, "end": 2030.0, "step": 10.0},
            "models": [
                {"kind": "hyperbolic", "parameters": {"b": 2.155e-3, "C": 4.376}},
                {"kind": "exponential", "parameters": {"r": 0.02, "C": 1.0e-14}},
            ],
        },
    )
    assert r.status_code == 200
    results = r.json()["results"]
    assert [p["kind"] for p in results] == ["hyperbolic", "exponential"]
    assert all(len(p["rows"]) == 4 for p in results)


def test_compare_fitted_plus_scenario(client):
    r = client.post(
        "/compare",
        json={
            "grid": {"start": 2010.0, "end": 2030.0, "step": 10.0},
            "series": exp_series(),
            "space": "log-size-vs-time",
            "scenario_rate": 0.05,
        },
    )
    assert r.status_code == 200
    results = r.json()["results"]
    # fitted model first, scenario second; both anchored at the last datum
    assert [p["kind"] for p in results] == ["exponential", "exponential"]
    fitted, scenario = results
    assert scenario["parameters"]["r"] == 0.05
    assert fitted["rows"][0]["value"] == pytest.approx(
        100.0 * math.exp(0.02 * 10.0), rel=1e-8
    )


def test_domain_errors_map_to_422(client):
    r = client.post(
        "/rates",
        json={"series": {"times": [2000, 1999, 2001], "values": [1.0, 2.0, 3.0]}},
    )
    assert r.status_code == 422
    err = r.json()["error"]
    assert err["module"] == "series"
    assert err["type"] == "NonMonotonicTime"

    # too few points for the default smoothing window
    r = client.post(
        "/rates",
        json={"series": {"times": [2000, 2001, 2002], "values": [1.0, 2.0, 3.0]}},
    )
    assert r.status_code == 422
    assert r.json()["error"]["type"] == "SeriesTooShort"


def test_shape_errors_use_fastapi_detail(client):
    r = client.post("/rates", json={"series": {"times": [2000, 2001]}})
    assert r.status_code == 422
    assert "detail" in r.json()  # pydantic validation, not a domain error

    r = client.post(
        "/fit", json={"series": exp_series(), "space": "no-such-space"}
    )
    assert r.status_code == 422
    assert "detail" in r.json()


def test_verify_reports_all_routes(client):
    r = client.post("/verify")
    assert r.status_code == 200
    rows = r.json()["rows"]
    assert len(rows) == 12
    by_model = {row["model"]: row for row in rows}
    catalog = [
        "exponential",
        "linear_rate_time",
        "poly_rate_time",
        "hyperbolic",
        "linear_rate_size",
        "hyperbolic_rate_time",
        "exp_rate_time",
        "log_linear_rate_time",
    ]
    for tag in catalog:
        assert by_model[tag]["max_rel_error"] < 1e-6
    assert by_model["exponential_h"]["max_rel_error"] >= 8.0 * by_model[
        "exponential_h_half"
    ]["max_rel_error"]
    assert by_model["partial_fraction_1"]["max_rel_error"] < 1e-10
    assert by_model["partial_fraction_2"]["max_rel_error"] < 1e-10


def test_projection_bytes_are_deterministic(client):
    payload = {
        "grid": {"start": 2000.0, "end": 2030.0, "step": 1.0},
        "model": {"kind": "hyperbolic", "parameters": {"b": 2.155e-3, "C": 4.376}},
    }
    first = client.post("/project", json=payload)
    second = client.post("/project", json=payload)
    assert first.content == second.content
