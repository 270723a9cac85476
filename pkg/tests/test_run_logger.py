import json

from config.settings import settings
from utils import run_logger
from utils.run_logger import VerificationLogger


def log(logger, suite="kummer", failures=0, max_residual=1e-12, duration=0.5):
    logger.log_run(
        suite=suite,
        cases=10,
        failures=failures,
        max_residual=max_residual,
        duration=duration,
        precision="fast",
        source="cli",
    )


class TestFileLogging:
    def test_writes_jsonl(self, tmp_path):
        path = tmp_path / "logs" / "runs.jsonl"
        logger = VerificationLogger(log_file=str(path))
        assert logger.use_file_logging

        log(logger)
        log(logger, suite="ode", failures=2)

        lines = path.read_text(encoding="utf-8").splitlines()
        assert len(lines) == 2
        first = json.loads(lines[0])
        assert first["suite"] == "kummer"
        assert first["status"] == "passed"
        assert json.loads(lines[1])["status"] == "failed"

    def test_recent_runs_are_limited(self, tmp_path):
        logger = VerificationLogger(log_file=str(tmp_path / "runs.jsonl"))
        for i in range(5):
            log(logger, duration=float(i))
        recent = logger.get_recent_runs(limit=2)
        assert [run["duration"] for run in recent] == [3.0, 4.0]

    def test_stats(self, tmp_path):
        logger = VerificationLogger(log_file=str(tmp_path / "runs.jsonl"))
        log(logger, suite="kummer", max_residual=1e-11, duration=1.0)
        log(logger, suite="ode", failures=1, max_residual=3e-4, duration=2.0)

        stats = logger.get_stats()
        assert stats["total_runs"] == 2
        assert stats["runs_today"] == 2
        assert stats["pass_rate"] == 50.0
        assert stats["avg_duration"] == 1.5
        assert stats["worst_residual"] == 3e-4
        assert stats["runs_by_suite"] == {"kummer": 1, "ode": 1}

        assert logger.get_stats(suite="kummer")["pass_rate"] == 100.0

    def test_empty_stats(self, tmp_path):
        stats = VerificationLogger(log_file=str(tmp_path / "runs.jsonl")).get_stats()
        assert stats["total_runs"] == 0
        assert stats["worst_residual"] is None


class TestMemoryFallback:
    def test_read_only_file_system(self, tmp_path, monkeypatch):
        monkeypatch.setattr(VerificationLogger, "_check_file_system_writable", lambda self: False)
        path = tmp_path / "runs.jsonl"
        logger = VerificationLogger(log_file=str(path), max_memory_logs=3)
        assert not logger.use_file_logging

        for i in range(5):
            log(logger, duration=float(i))

        assert not path.exists()
        assert [run["duration"] for run in logger.get_all_runs()] == [2.0, 3.0, 4.0]


class TestSharedInstance:
    def test_created_lazily_from_settings(self, tmp_path, monkeypatch):
        path = tmp_path / "shared.jsonl"
        monkeypatch.setattr(run_logger, "_run_logger", None)
        monkeypatch.setattr(settings, "RUN_LOG_FILE", str(path))

        shared = run_logger.get_run_logger()
        assert shared.log_file == str(path)
        assert run_logger.get_run_logger() is shared
