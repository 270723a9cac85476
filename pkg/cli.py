"""branchkit command line.

Every command prints a ``CommandResult`` envelope as JSON on stdout (or a
CSV / text table for ``--format csv|table`` on tabular commands). Exit codes:
0 success, 1 verification failure, 2 invalid parameters, 3 unsupported region.
"""

import json
import logging
import time
from typing import Callable, List, Optional, Sequence

import click
from pydantic import ValidationError

from models.api_schemas import BranchRequest, CommandResult, ErrorDetail, JacobiRequest, TensorRequest
from models.schemas import ComplexTriple, SolutionBasis, SplitSignature
from services.analysis_service import analysis_service
from services.verification_service import SUITES, verification_service
from utils.errors import BranchkitError, InvalidParameterError, VerificationFailure
from utils.helpers import format_processing_time, render_csv, render_table

logger = logging.getLogger(__name__)

BRANCH_COLUMNS = ("delta", "eps", "lambda1", "lambda2", "v_constant", "sgn_index")
JACOBI_COLUMNS = ("t", "value", "ode_residual")

FORMAT_OPTION = click.option(
    "--format", "fmt", type=click.Choice(["json", "csv", "table"]), default="json", show_default=True
)


def _validation_detail(e: ValidationError) -> ErrorDetail:
    """Surface the library error wrapped by a pydantic validator, if any"""
    for error in e.errors():
        original = (error.get("ctx") or {}).get("error")
        if isinstance(original, BranchkitError):
            return ErrorDetail(code="invalid_parameter", message=original.message, hint=original.hint)
    messages = [error.get("msg", "") for error in e.errors()]
    return ErrorDetail(code="invalid_parameter", message="; ".join(messages) or str(e))


def _emit(result: CommandResult):
    click.echo(result.model_dump_json(indent=2, by_alias=True))


def _run(ctx: click.Context, command: str, action: Callable):
    """
    Execute one command body and translate errors into the envelope

    Args:
        ctx: Click context, used for the exit code
        command: Command name recorded in the envelope
        action: Callable returning (payload, diagnostics, renderer); renderer
            is None for JSON output or a callable producing the text body
    """
    try:
        payload, diagnostics, renderer = action()
    except ValidationError as e:
        _emit(CommandResult(status="error", command=command, error=_validation_detail(e)))
        ctx.exit(2)
    except VerificationFailure as e:
        _emit(
            CommandResult(
                status="error",
                command=command,
                payload=e.report,
                error=ErrorDetail(**e.to_dict()),
            )
        )
        ctx.exit(e.exit_code)
    except BranchkitError as e:
        logger.info(f"{command} failed with {e.code}: {e.message}")
        _emit(CommandResult(status="error", command=command, error=ErrorDetail(**e.to_dict())))
        ctx.exit(e.exit_code)

    if renderer is not None:
        for line in diagnostics:
            click.echo(f"# {line}", err=True)
        click.echo(renderer())
        return
    _emit(CommandResult(status="ok", command=command, payload=payload, diagnostics=diagnostics))


def _render(fmt: str, rows: List[dict], columns: Sequence[str], banner: Optional[str] = None):
    if fmt == "json":
        return None
    if fmt == "csv":
        return lambda: render_csv(rows, columns).rstrip("\n")
    return lambda: "\n".join(([banner] if banner else []) + [render_table(rows, columns)])


@click.group(name="branchkit")
@click.option("--verbose", is_flag=True, help="Log service activity at INFO level")
def cli(verbose: bool):
    """Discrete branching spectra of O(p,q) and their special functions"""
    logging.basicConfig(
        level=logging.INFO if verbose else logging.WARNING,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )


@cli.command()
@click.option("--p", "p", type=int, required=True, help="Positive signature of O(p,q)")
@click.option("--q", "q", type=int, required=True, help="Negative signature of O(p,q)")
@click.option("--p1", type=int, required=True, help="Positive signature of the first factor")
@click.option("--q1", type=int, required=True, help="Negative signature of the first factor")
@click.option("--lambda", "lam", required=True, help="Spectral parameter, e.g. 7/2 or 3.5")
@click.option("--eps", type=click.Choice(["+", "-"]), default="+", show_default=True)
@click.option("--max-count", type=int, default=None, help="Needed when a parameter set is infinite")
@click.option("--total-max", default=None, help="Upper bound on lambda1 + lambda2")
@FORMAT_OPTION
@click.pass_context
def branch(ctx, p, q, p1, q1, lam, eps, max_count, total_max, fmt):
    """Discrete summands of the restriction with their norm constants"""

    def action():
        request = BranchRequest(
            p=p, q=q, p1=p1, q1=q1, eps=eps, lam=lam, max_count=max_count, total_max=total_max
        )
        response, diagnostics = analysis_service.branch(request)
        payload = response.model_dump(mode="json", by_alias=True)

        banner = None
        if response.spectral_class is not None:
            flags = response.spectral_class.model_dump()
            banner = "class: " + ", ".join(name for name, value in flags.items() if value)
        return payload, diagnostics, _render(fmt, payload["summands"], BRANCH_COLUMNS, banner)

    _run(ctx, "branch", action)


@cli.command()
@click.option("--suite", type=click.Choice(list(SUITES) + ["all"]), default="all", show_default=True)
@click.option("--tol", type=float, default=None, help="Quadrature tolerance (default: precision preset)")
@click.option("--grid-size", type=int, default=None, help="Grid points for the kummer and ode suites")
@click.pass_context
def verify(ctx, suite, tol, grid_size):
    """Run the numerical verification suites"""

    def action():
        if grid_size is not None and grid_size < 2:
            raise InvalidParameterError(f"--grid-size must be at least 2, got {grid_size}")
        start_time = time.time()
        report = verification_service.run(suite=suite, tol=tol, grid_size=grid_size, source="cli")
        payload = report.model_dump(mode="json")
        diagnostics = [f"finished in {format_processing_time(time.time() - start_time)}"]
        if not report.passed:
            failed = [s.suite for s in report.suites if not s.passed]
            raise VerificationFailure(f"Failing suites: {', '.join(failed)}", report=payload)
        return payload, diagnostics, None

    _run(ctx, "verify", action)


@cli.command()
@click.option("--p1", type=int, default=None)
@click.option("--q1", type=int, default=None)
@click.option("--p2", type=int, default=None)
@click.option("--q2", type=int, default=None)
@click.option("--triple", default=None, help='JSON {"g": ..., "h": [...], "gp": [...]}')
@click.option("--tensor", default=None, help='JSON {"g": ..., "h1": [...], "h2": [...]}')
@click.pass_context
def classify(ctx, p1, q1, p2, q2, triple, tensor):
    """Spectral class of a split, or bounded multiplicity of a complex triple"""
    split_flags = (p1, q1, p2, q2)

    def action():
        given = sum([any(v is not None for v in split_flags), triple is not None, tensor is not None])
        if given != 1:
            raise InvalidParameterError(
                "Give exactly one of the split flags, --triple or --tensor",
                hint="e.g. --p1 1 --q1 1 --p2 1 --q2 2",
            )

        if triple is not None:
            result = analysis_service.classify_triple(ComplexTriple.model_validate(_load_json(triple)))
        elif tensor is not None:
            result = analysis_service.tensor(TensorRequest.model_validate(_load_json(tensor)))
        else:
            if any(v is None for v in split_flags):
                raise InvalidParameterError("All of --p1 --q1 --p2 --q2 are required for a split")
            result = analysis_service.classify_split(SplitSignature(p1=p1, q1=q1, p2=p2, q2=q2))
        return result.model_dump(mode="json"), [], None

    _run(ctx, "classify", action)


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidParameterError(f"Malformed JSON: {e.msg}")


@cli.command()
@click.option("--lam", required=True, help="lambda")
@click.option("--lam1", required=True, help="lambda1")
@click.option("--lam2", required=True, help="lambda2")
@click.option(
    "--basis",
    type=click.Choice([basis.value for basis in SolutionBasis]),
    default=SolutionBasis.U1_AT_0.value,
    show_default=True,
)
@click.option("--t-grid", default="0:3:31", show_default=True, help="start:stop:count")
@click.option("--emit-ode-residual", is_flag=True, help="Add the pointwise ODE residual column")
@FORMAT_OPTION
@click.pass_context
def jacobi(ctx, lam, lam1, lam2, basis, t_grid, emit_ode_residual, fmt):
    """Tabulate a solution of the Jacobi equation"""

    def action():
        request = JacobiRequest(
            lam=lam, lam1=lam1, lam2=lam2, basis=basis, grid=t_grid, emit_ode_residual=emit_ode_residual
        )
        payload = analysis_service.jacobi_table(request).model_dump(mode="json")
        columns = JACOBI_COLUMNS if emit_ode_residual else JACOBI_COLUMNS[:2]
        return payload, [], _render(fmt, payload["rows"], columns)

    _run(ctx, "jacobi", action)


if __name__ == "__main__":
    cli()
