import pytest

from config.settings import settings
from utils import run_logger


@pytest.fixture
def run_log(tmp_path, monkeypatch):
    """Route verification runs to a temporary JSONL file"""
    logger = run_logger.VerificationLogger(log_file=str(tmp_path / "runs.jsonl"))
    monkeypatch.setattr(run_logger, "_run_logger", logger)
    return logger


@pytest.fixture
def fast_precision(monkeypatch):
    monkeypatch.setattr(settings, "PRECISION", "fast")
    return settings.profile
