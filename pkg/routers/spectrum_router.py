from fastapi import APIRouter, HTTPException, status, Request
from fastapi.concurrency import run_in_threadpool
from pydantic import ValidationError
from models.api_schemas import (
    BranchRequest,
    BranchResponse,
    HealthResponse,
    JacobiRequest,
    JacobiResponse,
    RunHistoryResponse,
    SplitClassification,
    TensorRequest,
    TensorResponse,
    TripleClassification,
    VerifyRequest,
    VerifyResponse,
)
from models.schemas import ComplexTriple, SplitSignature
from services.analysis_service import analysis_service
from services.verification_service import verification_service
from config.settings import settings
from utils.errors import BranchkitError, InvalidParameterError, UnsupportedRegionError
from utils.run_logger import get_run_logger
import logging
from slowapi import Limiter
from slowapi.util import get_remote_address

logger = logging.getLogger(__name__)

router = APIRouter()

limiter = Limiter(key_func=get_remote_address, default_limits=[settings.RATE_LIMIT])


def _to_http(e: Exception) -> HTTPException:
    """Map library and validation errors onto HTTP status codes"""
    if isinstance(e, ValidationError):
        return HTTPException(
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
            detail={"code": "invalid_parameter", "message": str(e)},
        )
    if isinstance(e, InvalidParameterError):
        return HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=e.to_dict())
    if isinstance(e, UnsupportedRegionError):
        return HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=e.to_dict())
    if isinstance(e, BranchkitError):
        return HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=e.to_dict())

    logger.error(f"Unexpected error: {str(e)}")
    return HTTPException(
        status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
        detail={"code": "internal_error", "message": str(e)},
    )


@router.get("/health", response_model=HealthResponse)
async def health_check():
    """Health check endpoint"""
    return HealthResponse(
        status="healthy",
        message="branchkit API is running"
    )


@router.post("/branch", response_model=BranchResponse)
@limiter.limit(settings.RATE_LIMIT)
async def branch(request: Request, branch_request: BranchRequest):
    """
    Discrete branching of pi(eps, lambda) to O(p1,q1) x O(p2,q2)

    Args:
        request: FastAPI request object
        branch_request: Representation, split and optional budget

    Returns:
        Summands with norm constants and the spectral class
    """
    try:
        response, diagnostics = analysis_service.branch(branch_request)
        for line in diagnostics:
            logger.info(f"branch: {line}")
        return response
    except Exception as e:
        raise _to_http(e)


@router.post("/classify/split", response_model=SplitClassification)
@limiter.limit(settings.RATE_LIMIT)
async def classify_split(request: Request, split: SplitSignature):
    try:
        return analysis_service.classify_split(split)
    except Exception as e:
        raise _to_http(e)


@router.post("/classify/triple", response_model=TripleClassification)
@limiter.limit(settings.RATE_LIMIT)
async def classify_triple(request: Request, triple: ComplexTriple):
    try:
        return analysis_service.classify_triple(triple)
    except Exception as e:
        raise _to_http(e)


@router.post("/tensor", response_model=TensorResponse)
@limiter.limit(settings.RATE_LIMIT)
async def tensor(request: Request, tensor_request: TensorRequest):
    try:
        return analysis_service.tensor(tensor_request)
    except Exception as e:
        raise _to_http(e)


@router.post("/jacobi", response_model=JacobiResponse)
@limiter.limit(settings.RATE_LIMIT)
async def jacobi(request: Request, jacobi_request: JacobiRequest):
    """Tabulate one solution basis of the radial equation on a grid"""
    try:
        return analysis_service.jacobi_table(jacobi_request)
    except Exception as e:
        raise _to_http(e)


@router.post("/verify", response_model=VerifyResponse)
@limiter.limit(settings.VERIFY_RATE_LIMIT)
async def verify(request: Request, verify_request: VerifyRequest):
    """
    Run verification suites

    A failing suite is still a 200 response; check the passed flag.
    """
    client_ip = request.client.host if request.client else "unknown"
    logger.info(f"Verification of '{verify_request.suite}' requested from {client_ip}")
    try:
        return await run_in_threadpool(
            verification_service.run,
            suite=verify_request.suite,
            tol=verify_request.tol,
            grid_size=verify_request.grid_size,
            source="api",
        )
    except Exception as e:
        raise _to_http(e)


@router.get("/verify/history", response_model=RunHistoryResponse)
async def verify_history(limit: int = 50, suite: str = None):
    """Recent verification runs with aggregate statistics"""
    run_logger = get_run_logger()
    runs = run_logger.get_recent_runs(limit=limit)
    if suite is not None:
        runs = [run for run in runs if run["suite"] == suite]
    return RunHistoryResponse(runs=runs, stats=run_logger.get_stats(suite=suite))
