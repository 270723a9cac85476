from datetime import datetime
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field

from models.halfint import HalfInt
from models.schemas import (
    ComplexTriple,
    JacobiParams,
    LieLabel,
    RepParam,
    Sign,
    SolutionBasis,
    SpectralClass,
    SplitSignature,
)


class HealthResponse(BaseModel):
    """Health check response"""
    status: str
    message: str
    timestamp: datetime = Field(default_factory=datetime.now)


class BranchRequest(BaseModel):
    """Request model for the discrete branching of pi(eps, lambda)"""
    p: int = Field(..., ge=0, description="Positive signature of O(p,q)")
    q: int = Field(..., ge=0, description="Negative signature of O(p,q)")
    eps: Sign = Field(Sign.PLUS, description="Sign of the representation")
    lam: HalfInt = Field(..., alias="lambda", description="Spectral parameter, e.g. '7/2'")
    p1: int = Field(..., ge=0, description="Positive signature of the first factor")
    q1: int = Field(..., ge=0, description="Negative signature of the first factor")
    max_count: Optional[int] = Field(None, ge=0, le=100_000, description="Required when a parameter set is infinite")
    total_max: Optional[HalfInt] = Field(None, description="Upper bound on lambda1 + lambda2")

    class Config:
        populate_by_name = True
        json_schema_extra = {
            "example": {"p": 3, "q": 2, "eps": "+", "lambda": "5/2", "p1": 2, "q1": 2}
        }


class BranchEntry(BaseModel):
    """One summand with its norm constant"""
    delta: Sign
    eps: Sign
    lambda1: HalfInt
    lambda2: HalfInt
    v_constant: Optional[float] = Field(None, description="Norm constant of the holographic operator")
    sgn_index: Optional[int] = Field(None, description="Exponent of sgn when a factor is O(1)")


class BranchResponse(BaseModel):
    rep: RepParam
    split: SplitSignature
    spectral_class: Optional[SpectralClass] = Field(
        None, description="Missing when the split is outside the classified range (p >= 2, q >= 1)"
    )
    summands: List[BranchEntry]
    truncated: bool = Field(False, description="True when the budget cut an infinite parameter set")


class SplitClassification(BaseModel):
    split: SplitSignature
    spectral_class: SpectralClass
    infinitely_many_discrete: bool
    discrete_series: Dict[str, bool] = Field(
        ..., description="Whether each factor O(p_i, q_i) has a discrete series"
    )


class TripleClassification(BaseModel):
    triple: ComplexTriple
    bounded: bool
    matched_rows: List[str] = Field(default_factory=list)
    bounded_pair: bool = Field(..., description="Whether (g, g') alone has bounded multiplicity")


class TensorRequest(BaseModel):
    g: LieLabel
    h1: List[LieLabel] = Field(..., min_length=1)
    h2: List[LieLabel] = Field(..., min_length=1)

    class Config:
        json_schema_extra = {
            "example": {
                "g": {"family": "sl", "rank_param": 4},
                "h1": [{"family": "sp", "rank_param": 2}],
                "h2": [{"family": "sp", "rank_param": 2}],
            }
        }


class TensorResponse(BaseModel):
    g: LieLabel
    h1: List[LieLabel]
    h2: List[LieLabel]
    bounded: bool


class JacobiRequest(BaseModel):
    lam: HalfInt = Field(..., description="lambda")
    lam1: HalfInt = Field(..., description="lambda1")
    lam2: HalfInt = Field(..., description="lambda2")
    basis: SolutionBasis = SolutionBasis.U1_AT_0
    grid: str = Field("0:3:31", description="start:stop:count")
    emit_ode_residual: bool = False

    class Config:
        json_schema_extra = {
            "example": {"lam": "1/2", "lam1": "2", "lam2": "1/2", "basis": "u1_at_0", "grid": "0:3:31"}
        }


class JacobiRow(BaseModel):
    t: float
    value: float
    ode_residual: Optional[float] = None


class JacobiResponse(BaseModel):
    params: JacobiParams
    basis: SolutionBasis
    rows: List[JacobiRow]


class VerifyRequest(BaseModel):
    suite: Literal["parseval", "kummer", "ode", "all"] = "all"
    tol: Optional[float] = Field(None, ge=1e-12, description="Quadrature tolerance, defaults to the precision preset")
    grid_size: Optional[int] = Field(None, ge=2, le=2000, description="Grid points for kummer and ode")


class CaseResult(BaseModel):
    label: str
    residual: Optional[float] = Field(None, description="Missing when the case raised or diverged")
    threshold: float
    passed: bool
    detail: Optional[str] = None


class SuiteReport(BaseModel):
    suite: str
    passed: bool
    max_residual: float
    duration: float
    cases: List[CaseResult]


class VerifyResponse(BaseModel):
    passed: bool
    precision: str
    suites: List[SuiteReport]


class RunHistoryResponse(BaseModel):
    runs: List[Dict[str, Any]]
    stats: Dict[str, Any]


class ErrorDetail(BaseModel):
    code: str
    message: str
    hint: Optional[str] = None


class CommandResult(BaseModel):
    """Envelope of every CLI command under --format json"""
    status: Literal["ok", "error"]
    command: str
    payload: Optional[Any] = None
    diagnostics: List[str] = Field(default_factory=list)
    error: Optional[ErrorDetail] = None
