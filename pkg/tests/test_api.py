import pytest
from fastapi.testclient import TestClient

from main import app


@pytest.fixture
def client():
    return TestClient(app)


def test_root(client):
    response = client.get("/")
    assert response.status_code == 200
    assert response.json()["endpoints"]["branch"] == "/branch (POST)"


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"


class TestBranch:
    def test_ok(self, client):
        response = client.post("/branch", json={"p": 3, "q": 2, "lambda": "5/2", "p1": 2, "q1": 2})
        assert response.status_code == 200
        body = response.json()
        assert body["split"] == {"p1": 2, "q1": 2, "p2": 1, "q2": 0}
        assert [s["lambda1"] for s in body["summands"]] == ["2", "1"]
        assert not body["truncated"]

    def test_lambda_outside_admissible_set(self, client):
        response = client.post("/branch", json={"p": 3, "q": 2, "lambda": "0", "p1": 2, "q1": 2})
        assert response.status_code == 422
        assert response.json()["detail"]["code"] == "invalid_parameter"

    def test_budget_required(self, client):
        response = client.post("/branch", json={"p": 3, "q": 2, "lambda": "1/2", "p1": 3, "q1": 1})
        assert response.status_code == 400
        assert response.json()["detail"]["code"] == "budget_required"

    def test_factor_does_not_fit(self, client):
        response = client.post("/branch", json={"p": 3, "q": 2, "lambda": "1/2", "p1": 4, "q1": 1})
        assert response.status_code == 400


class TestClassify:
    def test_split(self, client):
        response = client.post("/classify/split", json={"p1": 0, "q1": 2, "p2": 3, "q2": 1})
        assert response.status_code == 200
        body = response.json()
        assert body["spectral_class"]["discretely_decomposable"]
        assert body["infinitely_many_discrete"]

    def test_triple(self, client):
        triple = {
            "g": {"family": "sl", "rank_param": 5},
            "h": [{"family": "gl", "rank_param": 4}],
            "gp": [{"family": "so", "rank_param": 5}],
        }
        response = client.post("/classify/triple", json=triple)
        assert response.status_code == 200
        assert response.json()["bounded"] is False
        assert response.json()["bounded_pair"] is False

    def test_tensor(self, client):
        tensor = {
            "g": {"family": "sl", "rank_param": 4},
            "h1": [{"family": "sp", "rank_param": 2}],
            "h2": [{"family": "sp", "rank_param": 2}],
        }
        response = client.post("/tensor", json=tensor)
        assert response.status_code == 200
        assert response.json()["bounded"]

    def test_tensor_unsupported(self, client):
        tensor = {
            "g": {"family": "so", "rank_param": 9},
            "h1": [{"family": "gl", "rank_param": 4}],
            "h2": [{"family": "so", "rank_param": 8}],
        }
        response = client.post("/tensor", json=tensor)
        assert response.status_code == 422
        assert response.json()["detail"]["code"] == "unsupported_query"


class TestJacobi:
    def test_rows(self, client):
        response = client.post(
            "/jacobi", json={"lam": "1/2", "lam1": "2", "lam2": "1/2", "grid": "0:1:3", "emit_ode_residual": True}
        )
        assert response.status_code == 200
        rows = response.json()["rows"]
        assert rows[0] == {"t": 0.0, "value": 1.0, "ode_residual": None}
        assert rows[2]["ode_residual"] <= 1e-5

    def test_unsupported_region(self, client):
        response = client.post(
            "/jacobi", json={"lam": "1", "lam1": "1", "lam2": "1", "basis": "u2_at_0", "grid": "0.5:1:2"}
        )
        assert response.status_code == 422
        assert response.json()["detail"]["code"] == "unsupported_region"


def test_verify_and_history(client, run_log, fast_precision):
    response = client.post("/verify", json={"suite": "kummer"})
    assert response.status_code == 200
    assert response.json()["passed"]

    history = client.get("/verify/history", params={"suite": "kummer"})
    assert history.status_code == 200
    body = history.json()
    assert body["runs"][-1]["source"] == "api"
    assert body["stats"]["total_runs"] == 1
