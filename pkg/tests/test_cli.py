import json
import math

import pytest
from click.testing import CliRunner

from cli import cli
from config.settings import settings


@pytest.fixture
def runner():
    return CliRunner()


def envelope(result):
    return json.loads(result.stdout)


class TestBranch:
    args = ["branch", "--p", "3", "--q", "2", "--p1", "2", "--q1", "2", "--lambda", "5/2"]

    def test_json(self, runner):
        result = runner.invoke(cli, self.args)
        assert result.exit_code == 0
        body = envelope(result)
        assert body["status"] == "ok"
        assert body["command"] == "branch"

        payload = body["payload"]
        assert payload["rep"]["lambda"] == "5/2"
        assert payload["spectral_class"]["finite_discrete"]
        assert [(s["lambda1"], s["lambda2"]) for s in payload["summands"]] == [("2", "-1/2"), ("1", "1/2")]
        assert [s["sgn_index"] for s in payload["summands"]] == [0, 1]
        assert all(s["v_constant"] > 0 for s in payload["summands"])

    def test_csv(self, runner):
        result = runner.invoke(cli, self.args + ["--format", "csv"])
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[0] == "delta,eps,lambda1,lambda2,v_constant,sgn_index"
        assert lines[1].startswith("+,+,2,-1/2,")
        assert len(lines) == 3

    def test_table_has_class_banner(self, runner):
        result = runner.invoke(cli, self.args + ["--format", "table"])
        assert result.exit_code == 0
        assert result.stdout.splitlines()[0] == "class: finite_discrete"

    def test_lambda_outside_admissible_set(self, runner):
        result = runner.invoke(cli, ["branch", "--p", "3", "--q", "2", "--p1", "2", "--q1", "2", "--lambda", "0"])
        assert result.exit_code == 2
        error = envelope(result)["error"]
        assert error["code"] == "invalid_parameter"
        assert error["hint"] == "admissible values: 1/2, 3/2, 5/2, ..."

    def test_lambda_must_be_half_integer(self, runner):
        result = runner.invoke(cli, ["branch", "--p", "3", "--q", "2", "--p1", "2", "--q1", "2", "--lambda", "1/3"])
        assert result.exit_code == 2
        assert envelope(result)["status"] == "error"

    def test_infinite_set_needs_budget(self, runner):
        result = runner.invoke(cli, ["branch", "--p", "3", "--q", "2", "--p1", "3", "--q1", "1", "--lambda", "1/2"])
        assert result.exit_code == 2
        assert envelope(result)["error"]["code"] == "budget_required"

    def test_budget_truncates(self, runner):
        result = runner.invoke(
            cli,
            ["branch", "--p", "3", "--q", "2", "--p1", "3", "--q1", "1", "--lambda", "1/2", "--max-count", "3"],
        )
        assert result.exit_code == 0
        body = envelope(result)
        assert body["payload"]["truncated"]
        assert len(body["payload"]["summands"]) == 3
        assert any("truncated" in line for line in body["diagnostics"])


class TestJacobi:
    def test_rows(self, runner):
        result = runner.invoke(cli, ["jacobi", "--lam", "4", "--lam1", "1/2", "--lam2", "1/2", "--t-grid", "0:2:5"])
        assert result.exit_code == 0
        rows = envelope(result)["payload"]["rows"]
        assert [row["t"] for row in rows] == pytest.approx([0.0, 0.5, 1.0, 1.5, 2.0])
        for row in rows:
            assert row["value"] == pytest.approx(1 + 2 * math.sinh(row["t"]) ** 2, rel=1e-12)

    def test_csv_with_residual(self, runner):
        result = runner.invoke(
            cli,
            [
                "jacobi", "--lam", "3/2", "--lam1", "1", "--lam2", "1/2",
                "--t-grid", "0:2:5", "--emit-ode-residual", "--format", "csv",
            ],
        )
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[0] == "t,value,ode_residual"
        # the stencil leaves the domain at t = 0
        assert lines[1].endswith(",")
        assert float(lines[-1].split(",")[2]) <= 1e-5

    def test_unsupported_basis(self, runner):
        result = runner.invoke(
            cli, ["jacobi", "--lam", "1", "--lam1", "1", "--lam2", "1", "--basis", "u2_at_0", "--t-grid", "0.5:2:4"]
        )
        assert result.exit_code == 3
        assert envelope(result)["error"]["code"] == "unsupported_region"

    def test_bad_grid(self, runner):
        result = runner.invoke(cli, ["jacobi", "--lam", "1", "--lam1", "1", "--lam2", "1", "--t-grid", "3:0:4"])
        assert result.exit_code == 2


class TestClassify:
    def test_split(self, runner):
        result = runner.invoke(cli, ["classify", "--p1", "1", "--q1", "1", "--p2", "1", "--q2", "2"])
        assert result.exit_code == 0
        payload = envelope(result)["payload"]
        assert payload["spectral_class"]["purely_continuous"]
        assert payload["discrete_series"] == {"first": False, "second": True}

    def test_triple(self, runner):
        triple = {
            "g": {"family": "so", "rank_param": 9},
            "h": [{"family": "so", "rank_param": 8}],
            "gp": [{"family": "so", "rank_param": 5}, {"family": "so", "rank_param": 4}],
        }
        result = runner.invoke(cli, ["classify", "--triple", json.dumps(triple)])
        assert result.exit_code == 0
        payload = envelope(result)["payload"]
        assert payload["bounded"]
        assert payload["matched_rows"] == ["(so_n, so_n-1, so_p+so_q)"]

    def test_tensor_unsupported(self, runner):
        tensor = {
            "g": {"family": "so", "rank_param": 9},
            "h1": [{"family": "gl", "rank_param": 4}],
            "h2": [{"family": "so", "rank_param": 8}],
        }
        result = runner.invoke(cli, ["classify", "--tensor", json.dumps(tensor)])
        assert result.exit_code == 3
        assert envelope(result)["error"]["code"] == "unsupported_query"

    def test_exactly_one_query(self, runner):
        result = runner.invoke(cli, ["classify", "--p1", "1", "--triple", "{}"])
        assert result.exit_code == 2
        assert envelope(result)["error"]["hint"]

    def test_malformed_json(self, runner):
        result = runner.invoke(cli, ["classify", "--triple", "{not json"])
        assert result.exit_code == 2

    def test_degenerate_split(self, runner):
        result = runner.invoke(cli, ["classify", "--p1", "0", "--q1", "0", "--p2", "2", "--q2", "1"])
        assert result.exit_code == 2


class TestVerify:
    def test_suite_passes(self, runner, run_log, fast_precision):
        result = runner.invoke(cli, ["verify", "--suite", "kummer"])
        assert result.exit_code == 0
        body = envelope(result)
        assert body["payload"]["passed"]
        assert body["diagnostics"][0].startswith("finished in ")
        assert run_log.get_recent_runs()[-1]["source"] == "cli"

    def test_failure_exit_code(self, runner, run_log, fast_precision, monkeypatch):
        monkeypatch.setattr(settings, "ODE_TOL", 0.0)
        result = runner.invoke(cli, ["verify", "--suite", "ode", "--grid-size", "6"])
        assert result.exit_code == 1
        body = envelope(result)
        assert body["error"]["code"] == "verification_failed"
        assert not body["payload"]["passed"]

    def test_grid_size(self, runner):
        result = runner.invoke(cli, ["verify", "--suite", "ode", "--grid-size", "1"])
        assert result.exit_code == 2
