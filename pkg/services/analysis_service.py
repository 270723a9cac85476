from typing import List, Optional, Tuple
import logging

from config.settings import settings
from models.api_schemas import (
    BranchEntry,
    BranchRequest,
    BranchResponse,
    JacobiRequest,
    JacobiResponse,
    JacobiRow,
    SplitClassification,
    TensorRequest,
    TensorResponse,
    TripleClassification,
)
from models.halfint import HalfInt
from models.schemas import (
    ComplexTriple,
    EnumerationBudget,
    JacobiParams,
    RegionKind,
    RepParam,
    Sign,
    SolutionBasis,
    SplitSignature,
    Summand,
)
from services import appendix_classify, branching, hypergeom, parseval
from utils.errors import BranchkitError, DegenerateSignatureError, InvalidParameterError
from utils.helpers import parse_grid

logger = logging.getLogger(__name__)


class AnalysisService:
    """Branching reports, classification verdicts and special-function tables"""

    def __init__(self):
        self.lambda_guard = HalfInt(2 * settings.LAMBDA_GUARD)

    def _check_guard(self, *values: Optional[HalfInt]):
        for value in values:
            if value is not None and abs(value) > self.lambda_guard:
                raise InvalidParameterError(
                    f"|{value}| exceeds the supported range {settings.LAMBDA_GUARD}"
                )

    def build_split(self, p: int, q: int, p1: int, q1: int) -> SplitSignature:
        if p1 > p or q1 > q:
            raise InvalidParameterError(f"First factor ({p1},{q1}) does not fit in ({p},{q})")
        return SplitSignature(p1=p1, q1=q1, p2=p - p1, q2=q - q1)

    def _entry(self, rep: RepParam, split: SplitSignature, summand: Summand) -> BranchEntry:
        delta, eps = summand.delta, summand.eps
        if rep.eps is Sign.MINUS:
            delta, eps = delta.flip(), eps.flip()

        value = None
        try:
            value = parseval.v_constant(
                RegionKind.from_signs(delta, eps), summand.lambda1, summand.lambda2, rep.lam
            ).value
        except BranchkitError as e:
            logger.warning(f"No norm constant for {summand.signs} ({summand.lambda1},{summand.lambda2}): {e.message}")

        return BranchEntry(
            delta=summand.delta,
            eps=summand.eps,
            lambda1=summand.lambda1,
            lambda2=summand.lambda2,
            v_constant=value,
            sgn_index=branching.sgn_index(rep, split, summand),
        )

    def branch(self, request: BranchRequest) -> Tuple[BranchResponse, List[str]]:
        """
        Discrete part of the restriction with norm constants

        Args:
            request: Representation, split and optional budget

        Returns:
            Tuple of (response, diagnostics)
        """
        self._check_guard(request.lam, request.total_max)
        rep = RepParam(p=request.p, q=request.q, eps=request.eps, lam=request.lam)
        split = self.build_split(request.p, request.q, request.p1, request.q1)
        diagnostics = []

        budget = None
        if request.max_count is not None:
            budget = EnumerationBudget(max_count=request.max_count, total_max=request.total_max)

        summands = branching.branch_discrete(rep, split, budget)

        work_split = split.swapped() if rep.eps is Sign.MINUS else split
        truncated = budget is not None and any(
            branching.lambda_set_infinite(kind, work_split)
            for kind in (RegionKind.MINUS_PLUS, RegionKind.PLUS_MINUS)
        )
        if truncated:
            diagnostics.append(f"infinite parameter set truncated to max_count={budget.max_count}")

        spectral_class = None
        try:
            spectral_class = branching.classify_split(split)
        except DegenerateSignatureError as e:
            diagnostics.append(e.message)

        entries = [self._entry(rep, split, summand) for summand in summands]
        logger.info(f"Branch report for {split.as_tuple()}: {len(entries)} summands")
        return (
            BranchResponse(
                rep=rep,
                split=split,
                spectral_class=spectral_class,
                summands=entries,
                truncated=truncated,
            ),
            diagnostics,
        )

    def classify_split(self, split: SplitSignature) -> SplitClassification:
        spectral_class = branching.classify_split(split)
        return SplitClassification(
            split=split,
            spectral_class=spectral_class,
            infinitely_many_discrete=branching.lambda_union_infinite(split),
            discrete_series={
                "first": branching.discrete_series_exists(split.p1, split.q1),
                "second": branching.discrete_series_exists(split.p2, split.q2),
            },
        )

    def classify_triple(self, triple: ComplexTriple) -> TripleClassification:
        rows = appendix_classify.matching_rows(triple)
        return TripleClassification(
            triple=triple,
            bounded=bool(rows),
            matched_rows=[row.name for row in rows],
            bounded_pair=appendix_classify.bounded_multiplicity_pair(triple.g, triple.gp),
        )

    def tensor(self, request: TensorRequest) -> TensorResponse:
        bounded = appendix_classify.tensor_bounded(request.g, request.h1, request.h2)
        return TensorResponse(g=request.g, h1=request.h1, h2=request.h2, bounded=bounded)

    def jacobi_table(self, request: JacobiRequest) -> JacobiResponse:
        """Values of one solution basis on a grid, optionally with pointwise ODE residuals"""
        self._check_guard(request.lam, request.lam1, request.lam2)
        params = JacobiParams(lam=request.lam, lam1=request.lam1, lam2=request.lam2)
        grid = parse_grid(request.grid)

        values = hypergeom.basis_eval(request.basis, params, grid)
        rows = []
        for t, value in zip(grid, values):
            residual = None
            if request.emit_ode_residual:
                try:
                    residual = hypergeom.ode_residual(params, request.basis, [t])
                except InvalidParameterError:
                    # Stencil would leave the domain at this point
                    residual = None
            rows.append(JacobiRow(t=float(t), value=float(value), ode_residual=residual))

        logger.info(f"Jacobi table {request.basis.value} for ({params.lam1},{params.lam2},{params.lam}): {len(rows)} rows")
        return JacobiResponse(params=params, basis=SolutionBasis(request.basis), rows=rows)


# Global instance
analysis_service = AnalysisService()
