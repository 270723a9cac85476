"""Verification suites: Parseval identities, Kummer connection and radial ODE residuals."""

import logging
import math
import time
from typing import Callable, List, Optional, Tuple

import numpy as np

from config.settings import settings
from models.api_schemas import CaseResult, SuiteReport, VerifyResponse
from models.halfint import HalfInt
from models.schemas import JacobiParams, RegionKind, SolutionBasis
from services import hypergeom, parseval
from utils.errors import BranchkitError
from utils.run_logger import get_run_logger

logger = logging.getLogger(__name__)

SUITES = ("parseval", "kummer", "ode")

PARSEVAL_CASES_PER_KIND = 8
PARSEVAL_LAMBDA_MAX = HalfInt(13)
PARSEVAL_PARAM_MAX = HalfInt(11)

KUMMER_Z_RANGE = (-0.81, -0.04)
RATIO_T_RANGE = (1.2, 4.0)

# (lambda1, lambda2, lambda); lambda2 is never an integer
KUMMER_GENERIC = [
    ("1/2", "1/2", "1"),
    ("3/2", "1/2", "1"),
    ("0", "3/2", "1/2"),
    ("1", "1/2", "5/2"),
    ("2", "5/2", "3/2"),
    ("-1/2", "1/2", "2"),
]

# lambda1 - lambda2 - lambda - 1 in 2N, where the connection coefficient b vanishes
KUMMER_TERMINATING = [
    ("2", "1/2", "1/2"),
    ("9/2", "1/2", "1"),
    ("3", "1", "1"),
    ("5", "3/2", "1/2"),
]

ODE_PARAMS = [
    ("1", "1/2", "3/2"),
    ("2", "3/2", "1/2"),
    ("0", "1/2", "5/2"),
]

ODE_GRIDS = {
    SolutionBasis.U1_AT_0: (0.1, 3.0),
    SolutionBasis.U2_AT_0: (0.25, 3.0),
    SolutionBasis.U_INF_MINUS: (1.5, 5.0),
    SolutionBasis.U_INF_PLUS: (1.5, 5.0),
    SolutionBasis.PHI_COMPACT: (0.1, 1.4),
}


def _params(triple: Tuple[str, str, str]) -> JacobiParams:
    lam1, lam2, lam = (HalfInt.parse(text) for text in triple)
    return JacobiParams(lam=lam, lam1=lam1, lam2=lam2)


def _label(params: JacobiParams) -> str:
    return f"({params.lam1},{params.lam2},{params.lam})"


def parseval_triples() -> List[Tuple[RegionKind, HalfInt, HalfInt, HalfInt]]:
    """
    Deterministic sample of discrete parameters for each kind

    Candidates have 0 < lambda <= 13/2 and -1/2 <= lambda1, lambda2 <= 11/2.
    Per kind, evenly spaced members of the candidate list (ordered by
    lambda + lambda1 + lambda2) are taken, always including
    (+-, 2, 1/2, 1/2).
    """
    values = [HalfInt(t) for t in range(-1, PARSEVAL_PARAM_MAX.twice_value + 1)]
    lambdas = [HalfInt(t) for t in range(1, PARSEVAL_LAMBDA_MAX.twice_value + 1)]

    triples = [(RegionKind.PLUS_MINUS, HalfInt(4), HalfInt(1), HalfInt(1))]
    for kind in (RegionKind.MINUS_PLUS, RegionKind.PLUS_PLUS, RegionKind.PLUS_MINUS):
        candidates = [
            (lam1, lam2, lam)
            for lam in lambdas
            for lam1 in values
            for lam2 in values
            if parseval.lambda_offset(kind, lam1, lam2, lam).in_two_n()
        ]
        candidates.sort(key=lambda c: (c[0] + c[1] + c[2], c[2], c[1]))
        picks = np.linspace(0, len(candidates) - 1, PARSEVAL_CASES_PER_KIND).round().astype(int)
        for index in sorted(set(picks)):
            lam1, lam2, lam = candidates[index]
            entry = (kind, lam1, lam2, lam)
            if entry not in triples:
                triples.append(entry)
    return triples


class VerificationService:
    """Runs the numerical checks and records each run"""

    def __init__(self):
        self.suites = {
            "parseval": self._run_parseval,
            "kummer": self._run_kummer,
            "ode": self._run_ode,
        }

    def _case(self, label: str, threshold: float, compute: Callable[[], float], detail: str = None) -> CaseResult:
        try:
            residual = float(compute())
        except BranchkitError as e:
            logger.warning(f"Case {label} raised {e.code}: {e.message}")
            return CaseResult(label=label, residual=None, threshold=threshold, passed=False, detail=e.message)
        if not math.isfinite(residual):
            logger.warning(f"Case {label} produced a non-finite residual")
            return CaseResult(label=label, residual=None, threshold=threshold, passed=False, detail="non-finite residual")
        passed = residual <= threshold
        if not passed:
            logger.warning(f"Case {label} failed: residual {residual:.3e} > {threshold:.1e}")
        return CaseResult(label=label, residual=residual, threshold=threshold, passed=passed, detail=detail)

    def _run_parseval(self, tol: float, grid_size: Optional[int]) -> List[CaseResult]:
        cases = []
        for kind, lam1, lam2, lam in parseval_triples():
            expected = parseval.v_constant(kind, lam1, lam2, lam).value

            def relative_error(kind=kind, lam1=lam1, lam2=lam2, lam=lam, expected=expected):
                value = parseval.norm_integral(kind, lam1, lam2, lam, tol=tol)
                return abs(value - expected) / abs(expected)

            cases.append(
                self._case(
                    f"{kind.value} ({lam1},{lam2},{lam})",
                    settings.PARSEVAL_RTOL,
                    relative_error,
                    detail=f"V={expected:.15g}",
                )
            )
        return cases

    def _run_kummer(self, tol: float, grid_size: Optional[int]) -> List[CaseResult]:
        size = grid_size or settings.profile.kummer_grid_size
        z_grid = np.linspace(*KUMMER_Z_RANGE, size)
        t_grid = np.linspace(*RATIO_T_RANGE, size)
        cases = []

        for triple in KUMMER_GENERIC + KUMMER_TERMINATING:
            params = _params(triple)
            if params.lam2.is_integer:
                continue
            cases.append(
                self._case(
                    f"connection {_label(params)}",
                    settings.KUMMER_TOL,
                    lambda params=params: hypergeom.connection_residual(params, z_grid),
                )
            )

        for triple in KUMMER_TERMINATING:
            params = _params(triple)
            cases.append(
                self._case(
                    f"b=0 {_label(params)}",
                    0.0,
                    lambda params=params: abs(hypergeom.kummer_b(params)),
                )
            )

            def ratio_spread(params=params):
                ratio = np.asarray(hypergeom.basis_eval(SolutionBasis.U_INF_MINUS, params, t_grid)) / np.asarray(
                    hypergeom.jacobi_phi(params, t_grid)
                )
                return float(np.max(np.abs(ratio - ratio[0])) / abs(ratio[0]))

            cases.append(self._case(f"proportional {_label(params)}", settings.RATIO_RTOL, ratio_spread))
        return cases

    def _run_ode(self, tol: float, grid_size: Optional[int]) -> List[CaseResult]:
        size = grid_size or settings.profile.ode_grid_size
        cases = []
        for triple in ODE_PARAMS:
            params = _params(triple)
            for basis, (start, stop) in ODE_GRIDS.items():
                grid = np.linspace(start, stop, size)
                cases.append(
                    self._case(
                        f"{basis.value} {_label(params)}",
                        settings.ODE_TOL,
                        lambda params=params, basis=basis, grid=grid: hypergeom.ode_residual(params, basis, grid),
                    )
                )
        return cases

    def run(
        self,
        suite: str = "all",
        tol: Optional[float] = None,
        grid_size: Optional[int] = None,
        source: str = "cli",
    ) -> VerifyResponse:
        """
        Run one suite or all of them

        Args:
            suite: parseval, kummer, ode or all
            tol: Quadrature tolerance; the precision preset when omitted
            grid_size: Grid points for the kummer and ode suites
            source: Recorded in the run log

        Returns:
            Per-suite reports; passed is False if any case failed
        """
        names = SUITES if suite == "all" else (suite,)
        tol = tol if tol is not None else settings.profile.quadrature_tol
        run_logger = get_run_logger()

        reports = []
        for name in names:
            logger.info(f"Running {name} suite (precision={settings.PRECISION}, tol={tol})")
            start_time = time.time()
            cases = self.suites[name](tol, grid_size)
            duration = time.time() - start_time

            failures = sum(1 for case in cases if not case.passed)
            max_residual = max((case.residual for case in cases if case.residual is not None), default=0.0)
            reports.append(
                SuiteReport(
                    suite=name,
                    passed=failures == 0,
                    max_residual=max_residual,
                    duration=round(duration, 3),
                    cases=cases,
                )
            )
            run_logger.log_run(
                suite=name,
                cases=len(cases),
                failures=failures,
                max_residual=max_residual,
                duration=duration,
                precision=settings.PRECISION,
                source=source,
            )
            logger.info(f"{name} suite finished in {duration:.2f}s with {failures} failures")

        return VerifyResponse(
            passed=all(report.passed for report in reports),
            precision=settings.PRECISION,
            suites=reports,
        )


# Global instance
verification_service = VerificationService()
