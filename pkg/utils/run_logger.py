import json
import os
from collections import Counter
from datetime import datetime, timezone
from typing import Dict, List, Optional
import logging

logger = logging.getLogger(__name__)


class VerificationLogger:
    """Append-only log of verification runs - falls back to memory on read-only file systems"""

    def __init__(self, log_file: str = "logs/verification_runs.jsonl", max_memory_logs: int = 1000):
        self.log_file = log_file
        self.memory_logs: List[Dict] = []
        self.max_memory_logs = max_memory_logs
        self.use_file_logging = self._check_file_system_writable()

        if self.use_file_logging:
            logger.info(f"Verification runs are logged to {self.log_file}")
        else:
            logger.warning("File system not writable, keeping verification runs in memory")

    def _check_file_system_writable(self) -> bool:
        """Check if the log directory can be written (fails on serverless hosts)"""
        try:
            log_dir = os.path.dirname(self.log_file) or "."
            os.makedirs(log_dir, exist_ok=True)

            test_file = os.path.join(log_dir, ".write_test")
            with open(test_file, "w") as f:
                f.write("test")
            os.remove(test_file)
            return True
        except (OSError, PermissionError):
            return False

    def log_run(
        self,
        suite: str,
        cases: int,
        failures: int,
        max_residual: float,
        duration: float,
        precision: str,
        source: str = "cli",
    ):
        """Record one finished suite"""
        entry = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "suite": suite,
            "cases": cases,
            "failures": failures,
            "max_residual": max_residual,
            "duration": duration,
            "precision": precision,
            "source": source,
            "status": "passed" if failures == 0 else "failed",
        }

        if self.use_file_logging:
            try:
                with open(self.log_file, "a", encoding="utf-8") as f:
                    f.write(json.dumps(entry) + "\n")
                return
            except OSError as e:
                logger.error(f"Failed to write verification run: {str(e)}")
        self._log_to_memory(entry)

    def _log_to_memory(self, entry: Dict):
        self.memory_logs.append(entry)
        if len(self.memory_logs) > self.max_memory_logs:
            self.memory_logs = self.memory_logs[-self.max_memory_logs:]

    def get_all_runs(self, limit: int = 1000) -> List[Dict]:
        if self.use_file_logging and os.path.exists(self.log_file):
            runs = []
            try:
                with open(self.log_file, "r", encoding="utf-8") as f:
                    for line in f:
                        if line.strip():
                            runs.append(json.loads(line))
            except (OSError, json.JSONDecodeError) as e:
                logger.error(f"Failed to read verification runs: {str(e)}")
                return self.memory_logs[-limit:]
            return (runs + self.memory_logs)[-limit:]
        return self.memory_logs[-limit:]

    def get_recent_runs(self, limit: int = 50) -> List[Dict]:
        return self.get_all_runs(limit=limit)

    def get_stats(self, suite: Optional[str] = None) -> Dict:
        """
        Aggregate pass rate, timing and worst residual per suite

        Args:
            suite: Restrict to one suite name

        Returns:
            Summary dictionary
        """
        runs = self.get_all_runs()
        if suite is not None:
            runs = [run for run in runs if run["suite"] == suite]

        if not runs:
            return {
                "total_runs": 0,
                "runs_today": 0,
                "pass_rate": 0,
                "avg_duration": 0,
                "worst_residual": None,
                "runs_by_suite": {},
            }

        today = datetime.now(timezone.utc).date()
        runs_today = sum(1 for run in runs if datetime.fromisoformat(run["timestamp"]).date() == today)
        passed = sum(1 for run in runs if run["status"] == "passed")

        return {
            "total_runs": len(runs),
            "runs_today": runs_today,
            "pass_rate": round(passed / len(runs) * 100, 2),
            "avg_duration": round(sum(run["duration"] for run in runs) / len(runs), 3),
            "worst_residual": max(run["max_residual"] for run in runs),
            "runs_by_suite": dict(Counter(run["suite"] for run in runs)),
        }


_run_logger: Optional[VerificationLogger] = None


def get_run_logger() -> VerificationLogger:
    """Shared instance, created on first use so importing stays free of file I/O"""
    global _run_logger
    if _run_logger is None:
        # Import here to avoid circular imports
        from config.settings import settings

        _run_logger = VerificationLogger(log_file=settings.RUN_LOG_FILE)
    return _run_logger
