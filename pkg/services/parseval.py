"""Closed-form norm constants V and the radial quadrature that reproduces them."""

import logging
import math
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from models.halfint import HalfInt
from models.schemas import JacobiParams, NormConstant, RadialMeasure, RegionKind
from services.exactnum import gamma_quotient
from services.hypergeom import jacobi_phi, jacobi_phi_compact
from utils.errors import InvalidParameterError, QuadratureError

logger = logging.getLogger(__name__)

GL_NODES = 64
GRADED_PANEL = 1e-2
INITIAL_CUTOFF = 8.0
MAX_CUTOFF = 256.0
MAX_REFINEMENTS = 6
MIN_TOL = 1e-12


def _require_positive_lambda(lam: HalfInt):
    if lam <= 0:
        raise InvalidParameterError(f"lambda must be positive, got {lam}")


def _v_plus_minus(lam1: HalfInt, lam2: HalfInt, lam: HalfInt) -> float:
    quotient = gamma_quotient(
        [lam2 + 1, lam2 + 1, (lam1 - lam2 + lam + 1).halve(), (lam1 - lam2 - lam + 1).halve()],
        [(lam1 + lam2 + lam + 1).halve(), (lam1 + lam2 - lam + 1).halve()],
    )
    return quotient / (2.0 * float(lam))


def _v_plus_plus(lam1: HalfInt, lam2: HalfInt, lam: HalfInt) -> float:
    quotient = gamma_quotient(
        [lam2 + 1, lam2 + 1, (-lam1 - lam2 + lam + 1).halve(), (lam1 - lam2 + lam + 1).halve()],
        [(-lam1 + lam2 + lam + 1).halve(), (lam1 + lam2 + lam + 1).halve()],
    )
    return quotient / (2.0 * float(lam))


def v_constant(kind: RegionKind, lam1: HalfInt, lam2: HalfInt, lam: HalfInt) -> NormConstant:
    """
    Norm constant V of the holographic operator for the given sign pair

    Args:
        kind: One of -+, ++, +-
        lam1: Parameter on the first factor
        lam2: Parameter on the second factor
        lam: Parameter of the restricted representation, positive

    Returns:
        NormConstant with the exact-Gamma value
    """
    kind = RegionKind(kind)
    lam, lam1, lam2 = HalfInt.of(lam), HalfInt.of(lam1), HalfInt.of(lam2)
    _require_positive_lambda(lam)

    if kind is RegionKind.PLUS_MINUS:
        value = _v_plus_minus(lam1, lam2, lam)
    elif kind is RegionKind.MINUS_PLUS:
        value = _v_plus_minus(lam2, lam1, lam)
    else:
        value = _v_plus_plus(lam1, lam2, lam)

    return NormConstant(kind=kind, lam1=lam1, lam2=lam2, lam=lam, value=value)


def v_positivity_condition(kind: RegionKind, lam1: HalfInt, lam2: HalfInt, lam: HalfInt) -> bool:
    """lambda > 0, lambda1, lambda2 >= -1/2 and delta*eps*lambda - eps*lambda1 - delta*lambda2 > 0"""
    kind = RegionKind(kind)
    lam, lam1, lam2 = HalfInt.of(lam), HalfInt.of(lam1), HalfInt.of(lam2)
    delta, eps = kind.delta.factor, kind.eps.factor
    floor = HalfInt(-1)
    if lam <= 0 or lam1 < floor or lam2 < floor:
        return False
    return lam * (delta * eps) - lam1 * eps - lam2 * delta > 0


def radial_density(measure: RadialMeasure, t):
    """(cosh t)^(2 lam1 + 1) (sinh t)^(2 lam2 + 1), or cos/sin on the compact domain"""
    points = np.asarray(t, dtype=float)
    w1, w2 = 2.0 * float(measure.lam1) + 1.0, 2.0 * float(measure.lam2) + 1.0
    if measure.domain == "compact":
        density = np.cos(points) ** w1 * np.sin(points) ** w2
    else:
        density = np.cosh(points) ** w1 * np.sinh(points) ** w2
    if np.ndim(density) == 0:
        return float(density)
    return density


@lru_cache(maxsize=4)
def _gauss_legendre(n: int):
    return np.polynomial.legendre.leggauss(n)


def _finite(values: np.ndarray) -> np.ndarray:
    # Overflowing factors only occur far in the tail, where the integrand is negligible
    return np.where(np.isfinite(values), values, 0.0)


def _panel_edges(upper: float, panels: int) -> np.ndarray:
    graded = min(GRADED_PANEL, upper / 2.0)
    return np.concatenate(([0.0], np.linspace(graded, upper, panels + 1)))


def _composite(integrand: Callable, edges: np.ndarray) -> float:
    nodes, weights = _gauss_legendre(GL_NODES)
    lower, upper = edges[:-1, None], edges[1:, None]
    half = 0.5 * (upper - lower)
    points = 0.5 * (upper + lower) + half * nodes
    values = _finite(np.asarray(integrand(points.ravel()), dtype=float)).reshape(points.shape)
    return float(np.sum(half[:, 0] * (values @ weights)))


def _refine(integrand: Callable, upper: float, tol: float) -> float:
    panels = max(4, int(math.ceil(upper)))
    estimate = _composite(integrand, _panel_edges(upper, panels))
    for _ in range(MAX_REFINEMENTS):
        panels *= 2
        refined = _composite(integrand, _panel_edges(upper, panels))
        if abs(refined - estimate) <= tol * abs(refined):
            return refined
        estimate = refined
    raise QuadratureError(
        f"Panel halving did not settle on [0, {upper}] within tol={tol}",
        hint="loosen --tol or check the parameters",
    )


def integrate_radial(
    integrand: Callable,
    upper: float = math.inf,
    decay_rate: Optional[float] = None,
    tol: float = 1e-10,
) -> float:
    """
    Composite Gauss-Legendre quadrature on (0, upper)

    The first panel [0, 1e-2] is kept separate for the endpoint weight. On
    (0, inf) the cutoff T doubles from 8 until the tail bound
    integrand(T) / decay_rate drops below tol times the estimate.

    Args:
        integrand: Vectorized function of t
        upper: Finite upper limit or math.inf
        decay_rate: Exponential decay rate of the integrand, needed when upper is inf
        tol: Relative tolerance, at least 1e-12

    Returns:
        The integral
    """
    if tol < MIN_TOL:
        raise InvalidParameterError(f"tol must be at least {MIN_TOL}, got {tol}")
    if math.isfinite(upper):
        return _refine(integrand, upper, tol)

    if decay_rate is None or decay_rate <= 0.0:
        raise InvalidParameterError("An infinite range needs a positive decay rate")

    cutoff = INITIAL_CUTOFF
    while cutoff <= MAX_CUTOFF:
        estimate = _refine(integrand, cutoff, tol)
        tail = float(_finite(np.asarray(integrand(np.array([cutoff])), dtype=float))[0]) / decay_rate
        if abs(tail) <= tol * abs(estimate):
            logger.debug(f"Truncated at T={cutoff} with tail {tail:.3e}")
            return estimate
        cutoff *= 2.0
    raise QuadratureError(
        f"Tail did not fall below tol={tol} before T={MAX_CUTOFF}",
        hint="the integrand may not be square integrable",
    )


def _log_cosh(t: np.ndarray) -> np.ndarray:
    return np.logaddexp(t, -t) - math.log(2.0)


def _log_sinh(t: np.ndarray) -> np.ndarray:
    return t + np.log(-np.expm1(-2.0 * t)) - math.log(2.0)


def lambda_offset(kind: RegionKind, lam1: HalfInt, lam2: HalfInt, lam: HalfInt) -> HalfInt:
    if kind is RegionKind.PLUS_MINUS:
        return lam1 - lam2 - lam - 1
    if kind is RegionKind.MINUS_PLUS:
        return lam2 - lam - lam1 - 1
    return lam - lam1 - lam2 - 1


def _hyperbolic_integrand(params: JacobiParams, w1: float, w2: float) -> Callable:
    def integrand(t):
        phi = np.asarray(jacobi_phi(params, t), dtype=float)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            log_value = 2.0 * np.log(np.abs(phi)) + w1 * _log_cosh(t) + w2 * _log_sinh(t)
            return np.exp(log_value)

    return integrand


def _compact_integrand(params: JacobiParams, w1: float, w2: float) -> Callable:
    def integrand(theta):
        phi = np.asarray(jacobi_phi_compact(params, theta), dtype=float)
        return phi ** 2 * np.cos(theta) ** w1 * np.sin(theta) ** w2

    return integrand


def norm_integral(kind: RegionKind, lam1: HalfInt, lam2: HalfInt, lam: HalfInt, tol: float = 1e-10) -> float:
    """
    Squared L2 norm of the Jacobi function against the radial measure

        +-   int_0^inf |phi(t)|^2 (cosh t)^(2 l1 + 1) (sinh t)^(2 l2 + 1) dt
        ++   int_0^(pi/2) |phi(i theta)|^2 (cos theta)^(2 l1 + 1) (sin theta)^(2 l2 + 1) d theta
        -+   the +- integral with l1 and l2 exchanged

    Only members of the discrete parameter sets are accepted; elsewhere the
    hyperbolic integrals diverge.
    """
    kind = RegionKind(kind)
    lam, lam1, lam2 = HalfInt.of(lam), HalfInt.of(lam1), HalfInt.of(lam2)
    if tol < MIN_TOL:
        raise InvalidParameterError(f"tol must be at least {MIN_TOL}, got {tol}")
    floor = HalfInt(-2)
    if lam <= 0 or lam1 <= floor or lam2 <= floor or not lambda_offset(kind, lam1, lam2, lam).in_two_n():
        raise InvalidParameterError(
            f"({lam1},{lam2}) is not a discrete parameter for kind {kind.value} at lambda={lam}; "
            "the integral diverges"
        )

    if kind is RegionKind.MINUS_PLUS:
        lam1, lam2 = lam2, lam1
    params = JacobiParams(lam=lam, lam1=lam1, lam2=lam2)
    w1, w2 = 2.0 * float(lam1) + 1.0, 2.0 * float(lam2) + 1.0

    if kind is RegionKind.PLUS_PLUS:
        value = integrate_radial(_compact_integrand(params, w1, w2), upper=math.pi / 2, tol=tol)
    else:
        value = integrate_radial(
            _hyperbolic_integrand(params, w1, w2), decay_rate=2.0 * float(lam), tol=tol
        )

    logger.debug(f"norm_integral {kind.value} ({lam1},{lam2},{lam}) = {value:.15g}")
    return value


def l2_membership(lam: HalfInt, lam1: HalfInt, lam2: HalfInt) -> bool:
    """Whether the decaying solution at infinity is square integrable near t=0"""
    lam, lam1, lam2 = HalfInt.of(lam), HalfInt.of(lam1), HalfInt.of(lam2)
    floor = HalfInt(-2)
    if lam <= 0 or lam1 <= floor or lam2 <= floor:
        raise InvalidParameterError(
            f"l2_membership needs lambda > 0 and lambda1, lambda2 > -1 (got {lam}, {lam1}, {lam2})"
        )
    return floor < lam2 < HalfInt(2) or (lam1 - lam2 - lam - 1).in_two_n()
