from typing import List, Literal

from pydantic import BaseModel
from pydantic_settings import BaseSettings


class PrecisionProfile(BaseModel):
    """Quadrature tolerance and grid sizes used by the verification suites"""
    quadrature_tol: float
    kummer_grid_size: int
    ode_grid_size: int


PRECISION_PRESETS = {
    "fast": PrecisionProfile(quadrature_tol=1e-9, kummer_grid_size=12, ode_grid_size=24),
    "strict": PrecisionProfile(quadrature_tol=1e-10, kummer_grid_size=40, ode_grid_size=60),
}


class Settings(BaseSettings):
    """Application settings and environment variables"""

    PORT: int = 8000
    HOST: str = "0.0.0.0"

    # API settings
    API_TITLE: str = "branchkit API"
    API_DESCRIPTION: str = "Discrete branching spectra of O(p,q) and the special functions behind them"
    API_VERSION: str = "1.0.0"
    CORS_ORIGINS: List[str] = ["http://localhost:3000"]

    # Rate limits
    RATE_LIMIT: str = "60/minute"
    VERIFY_RATE_LIMIT: str = "5/minute"

    # Verification settings
    PRECISION: Literal["fast", "strict"] = "strict"
    PARSEVAL_RTOL: float = 1e-8
    KUMMER_TOL: float = 1e-10
    RATIO_RTOL: float = 1e-8
    ODE_TOL: float = 1e-5

    # Largest |lambda| accepted from callers
    LAMBDA_GUARD: int = 200

    RUN_LOG_FILE: str = "logs/verification_runs.jsonl"

    class Config:
        env_file = ".env"
        env_prefix = "BRANCHKIT_"
        case_sensitive = True

    @property
    def profile(self) -> PrecisionProfile:
        return PRECISION_PRESETS[self.PRECISION]


settings = Settings()
