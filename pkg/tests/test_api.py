SL3 = {"preset": "sl", "args": [3]}


def test_health(client):
    response = client.get("/")
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == "ok"
    assert "rank1" in body["tables"]


def test_presets(client):
    body = client.get("/api/cartan/presets").json()
    assert "sl" in body["families"]
    assert body["files"]


def test_build(client):
    response = client.post("/api/cartan/build", json=SL3)
    assert response.status_code == 200
    body = response.json()
    assert body["dim"] == 8
    assert body["rank"] == 2
    assert body["simple_core_dim"] == 8
    assert body["config"]["command"] == "build"


def test_unknown_preset_maps_to_404(client):
    response = client.post("/api/cartan/build", json={"preset": "nope", "args": [1]})
    assert response.status_code == 404
    assert response.json()["error"] == "UnknownPreset"


def test_source_needs_exactly_one_origin(client):
    response = client.post("/api/cartan/build", json={"preset": "sl", "args": [3], "preset_file": "wk3_1"})
    assert response.status_code == 422


def test_grade(client):
    response = client.post("/api/cartan/grade", json={"source": SL3, "r": [1, 0]})
    body = response.json()
    assert body["depth"] == 1
    assert body["simplest"]
    assert body["dims_by_degree"] == {"-1": 2, "0": 4, "1": 2}


def test_grading_length_mismatch(client):
    response = client.post("/api/cartan/grade", json={"source": SL3, "r": [1]})
    assert response.status_code == 422
    assert response.json()["error"] == "InvalidParams"


def test_prolong(client):
    response = client.post("/api/prolong", json={
        "source": {"preset": "o_Pi", "args": [3]}, "r": [1], "N": [2], "constraints": False,
    })
    body = response.json()
    assert body["total"] == 4
    assert body["stabilized"]
    assert "vect(1;N)" in body["top_verdicts"]


def test_series_member(client):
    body = client.get("/api/series/vect", params={"N": [2]}).json()
    assert body["dim"] == 4
    assert body["formula"] == "4"


def test_series_formula(client):
    body = client.get("/api/series/formula/pec2", params={"m": 3}).json()
    assert body["sdim"] == "10|6"
    response = client.get("/api/series/formula/pec2", params={"m": 4})
    assert response.status_code == 422


def test_forms(client):
    body = client.post("/api/forms/extend", json={"family": "pe", "m": 4}).json()
    assert body["sdim"] == "18|12"
    body = client.post("/api/forms/preserver", json={"n_ev": 2}).json()
    assert body["dim"] == 3
    response = client.post("/api/forms/canonicalize", json={"n_ev": 2, "B_ev": [[1, 1], [1, 1]]})
    assert response.status_code == 422
    assert response.json()["error"] == "DegenerateForm"


def test_identify_defaults_free_coordinates_to_one(client):
    body = client.post("/api/prolong/identify", json={"source": {"preset": "o_Pi", "args": [3]}, "r": [1]}).json()
    assert body["N_used"] == [1]
    assert body["N_constraints"] == ["FREE"]
    assert body["total"] == 2
    assert "vect(1;N)" in body["top_verdicts"]


def test_responses_carry_elapsed_time(client):
    response = client.get("/api/cartan/presets")
    assert float(response.headers["X-Elapsed-Seconds"]) >= 0
