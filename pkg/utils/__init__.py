from .helpers import (
    parse_grid,
    render_csv,
    render_table,
    format_processing_time,
)
from .run_logger import VerificationLogger, get_run_logger

__all__ = [
    "parse_grid",
    "render_csv",
    "render_table",
    "format_processing_time",
    "VerificationLogger",
    "get_run_logger",
]
