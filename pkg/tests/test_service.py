from fastapi.testclient import TestClient

from stackcount.service.app import app

client = TestClient(app)

WORKED_MODEL = {
    "p": 5,
    "n": 1,
    "a4": {"deg": 4, "coeffs": [0, 0, 1, 0, 0]},
    "a6": {"deg": 6, "coeffs": [0, 0, 0, 1, 0, 0, 0]},
}


def test_health():
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json()["status"] == "ok"


def test_classify_endpoint():
    r = client.post("/classify", json=WORKED_MODEL)
    assert r.status_code == 200
    data = r.json()
    assert [f["type"] for f in data["fibers"]] == ["I_0*", "I_0*"]
    assert data["summary"]["gamma"] == [[2, 1], [2, 1]]
    assert data["height"]["isotrivial"] is True


def test_classify_generically_singular_400():
    # 4 a4^3 + 27 a6^2 = 0: a4 = -3 t^2 s^2, a6 = 2 t^3 s^3
    bad = {
        "p": 5,
        "n": 1,
        "a4": {"deg": 4, "coeffs": [0, 0, 2, 0, 0]},
        "a6": {"deg": 6, "coeffs": [0, 0, 0, 2, 0, 0, 0]},
    }
    r = client.post("/classify", json=bad)
    assert r.status_code in (400, 422)


def test_height_and_minimalize_endpoints():
    series = {
        "p": 5,
        "weights": [4, 6],
        "n": 2,
        "forms": [
            {"deg": 8, "coeffs": [0, 0, 0, 0, 1, 1, 0, 0, 0]},
            {"deg": 12, "coeffs": [0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0]},
        ],
    }
    r = client.post("/minimalize", json=series)
    assert r.status_code == 200
    assert r.json()["defect"] == 1

    r = client.post("/height", json=series)
    assert r.status_code == 200
    assert r.json()["ht"] == 1

    r = client.post("/height", json={**series, "require_minimal": True})
    assert r.status_code == 400


def test_motive_endpoint():
    r = client.post("/motive", json={"kind": "wmin", "weights": [4, 6], "n": 1, "q": 5})
    assert r.status_code == 200
    assert r.json()["specialized"]["value"] == "61035120"

    r = client.post("/motive", json={
        "kind": "stratum", "weights": [4, 6], "n": 1, "gamma": ">=1,1", "q": 5,
    })
    assert r.json()["specialized"]["value"] == "9375000"

    r = client.post("/motive", json={"kind": "nope"})
    assert r.status_code == 422


def test_zeta_endpoint():
    r = client.post("/zeta", json={"weights": [4, 6], "order": 3, "q": 5})
    assert r.status_code == 200
    data = r.json()
    assert data["ambient_identity"] is True
    assert data["specialized"][1] == "61035120"


def test_count_endpoint():
    r = client.post("/count", json={"q": 5, "b_exp": 1, "mode": "kodaira", "theta": "II"})
    assert r.status_code == 200
    data = r.json()
    assert data["match"] is True and data["value_sum"] == str(2 * 24 * 5**8)

    r = client.post("/count", json={"q": 4, "b_exp": 1, "mode": "weighted"})
    assert r.status_code == 422


def test_census_endpoint_budget_guard():
    r = client.post("/census", json={"p": 5, "weights": [1, 1], "n": 1})
    assert r.status_code == 200
    assert r.json()["raw"] == 480

    # heavy runs are refused over HTTP
    r = client.post("/census", json={"p": 5, "weights": [4, 6], "n": 1})
    assert r.status_code == 400
    assert "budget" in r.json()["detail"]


def test_stratum_census_endpoint():
    r = client.post("/census", json={
        "p": 5, "weights": [2, 3], "n": 1, "gamma": ">=1,1",
    })
    assert r.status_code == 200
    assert r.json()["weighted"] == "3000"


def test_verify_endpoint_shape(monkeypatch):
    # stub the suite (the real one runs a minute; see test_acceptance)
    import stackcount.service.app as service_app
    from stackcount.census import VerifyCase, VerifyReport

    stub = VerifyReport(
        suite="core", ok=True,
        cases=[VerifyCase("toy", "1", "1", True, 0.0)],
        skipped=["heavy"], seconds=0.1,
    )
    monkeypatch.setattr(service_app, "verify", lambda **kw: stub)
    r = client.post("/verify", json={"workers": 1})
    assert r.status_code == 200
    data = r.json()
    assert data["ok"] is True
    assert data["cases"] == []  # passing cases elided unless full=True
    r = client.post("/verify", json={"workers": 1, "full": True})
    assert len(r.json()["cases"]) == 1
