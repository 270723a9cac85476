"""Gauss hypergeometric function on the real line, Jacobi functions and
the solution bases of the radial equation.

Real-line evaluation of 2F1(a, b; c; z) for half-integer a, b, c:

    terminating (a or b in -N)         finite sum, any z
    Euler-terminating (c-a or c-b)     (1-z)^(c-a-b) x finite sum, z < 1
    -1/2 <= z <= 9/10                  direct series
    -4 <= z < -1/2                     Pfaff, argument z/(z-1) in (1/3, 4/5]
    z < -4                             z -> 1/z connection when b-a is not an integer
    9/10 < z < 1                       z -> 1-z connection when c-a-b is not an integer

The two remaining degenerate cases go through mpmath at 30 digits.
"""

import logging
import math
from typing import Union

import mpmath
import numpy as np

from models.halfint import HalfInt
from models.schemas import JacobiParams, SolutionBasis
from services.exactnum import gamma_quotient
from utils.errors import (
    GammaPoleError,
    InvalidParameterError,
    SeriesDivergenceError,
    UnsupportedRegionError,
)

logger = logging.getLogger(__name__)

SERIES_RTOL = 1e-16
MAX_TERMS = 10_000

DIRECT_LOWER = -0.5
DIRECT_UPPER = 0.9
PFAFF_LOWER = -4.0

FD_STEP = 1e-3

ArrayLike = Union[float, np.ndarray]


def _terminating_degree(*params: HalfInt):
    """Degree of the polynomial when one numerator parameter lies in -N"""
    degrees = [-p.as_int() for p in params if p.is_nonpositive_integer()]
    return min(degrees) if degrees else None


def _series(a: HalfInt, b: HalfInt, c: HalfInt, z: np.ndarray) -> np.ndarray:
    fa, fb, fc = float(a), float(b), float(c)
    term = np.ones_like(z)
    total = np.ones_like(z)

    degree = _terminating_degree(a, b)
    if degree is not None:
        for k in range(degree):
            term = term * ((fa + k) * (fb + k) / ((fc + k) * (k + 1))) * z
            total = total + term
        return total

    for k in range(MAX_TERMS):
        term = term * ((fa + k) * (fb + k) / ((fc + k) * (k + 1))) * z
        total = total + term
        if np.all(np.abs(term) <= SERIES_RTOL * np.abs(total)):
            return total
    raise SeriesDivergenceError(
        f"2F1({a},{b};{c};z) series did not converge in {MAX_TERMS} terms "
        f"(max |z| = {float(np.max(np.abs(z))):.4f})"
    )


def _check_c(c: HalfInt):
    if c.is_nonpositive_integer():
        raise GammaPoleError(f"2F1 is undefined for c={c}")


def hyp2f1_series(a: HalfInt, b: HalfInt, c: HalfInt, z: float) -> float:
    """
    Partial sums of the Gauss series, stopped below 1e-16 relative

    Args:
        a, b, c: Half-integer parameters, c not in -N
        z: Argument with |z| < 1

    Returns:
        2F1(a, b; c; z)
    """
    a, b, c = HalfInt.of(a), HalfInt.of(b), HalfInt.of(c)
    _check_c(c)
    if abs(z) >= 1.0:
        raise SeriesDivergenceError(f"Gauss series diverges at |z|={abs(z)}")
    return float(_series(a, b, c, np.array([float(z)]))[0])


def _mpmath_values(a: HalfInt, b: HalfInt, c: HalfInt, z: np.ndarray) -> np.ndarray:
    logger.warning(
        f"Degenerate connection for 2F1({a},{b};{c}); using mpmath on {z.size} points"
    )
    with mpmath.workdps(30):
        ma, mb, mc = (mpmath.mpf(p.twice_value) / 2 for p in (a, b, c))
        return np.array([float(mpmath.re(mpmath.hyp2f1(ma, mb, mc, float(zi)))) for zi in z])


def _pfaff(a: HalfInt, b: HalfInt, c: HalfInt, z: np.ndarray) -> np.ndarray:
    w = z / (z - 1.0)
    return (1.0 - z) ** (-float(a)) * _hyp2f1_array(a, c - b, c, w)


def _inverse_connection(a: HalfInt, b: HalfInt, c: HalfInt, z: np.ndarray) -> np.ndarray:
    if (b - a).is_integer:
        return _mpmath_values(a, b, c, z)

    w = 1.0 / z
    total = np.zeros_like(z)
    coeff_a = gamma_quotient([c, b - a], [b, c - a])
    if coeff_a != 0.0:
        total += coeff_a * (-z) ** (-float(a)) * _hyp2f1_array(a, a - c + 1, a - b + 1, w)
    coeff_b = gamma_quotient([c, a - b], [a, c - b])
    if coeff_b != 0.0:
        total += coeff_b * (-z) ** (-float(b)) * _hyp2f1_array(b, b - c + 1, b - a + 1, w)
    return total


def _one_minus_connection(a: HalfInt, b: HalfInt, c: HalfInt, z: np.ndarray) -> np.ndarray:
    if (c - a - b).is_integer:
        return _mpmath_values(a, b, c, z)

    w = 1.0 - z
    total = np.zeros_like(z)
    coeff_a = gamma_quotient([c, c - a - b], [c - a, c - b])
    if coeff_a != 0.0:
        total += coeff_a * _hyp2f1_array(a, b, a + b - c + 1, w)
    coeff_b = gamma_quotient([c, a + b - c], [a, b])
    if coeff_b != 0.0:
        total += coeff_b * w ** float(c - a - b) * _hyp2f1_array(c - a, c - b, c - a - b + 1, w)
    return total


_REGIONS = {
    "direct": _series,
    "pfaff": _pfaff,
    "inverse": _inverse_connection,
    "one_minus": _one_minus_connection,
}


def _hyp2f1_array(a: HalfInt, b: HalfInt, c: HalfInt, z: np.ndarray) -> np.ndarray:
    _check_c(c)
    if _terminating_degree(a, b) is not None:
        return _series(a, b, c, z)

    if np.any(z >= 1.0):
        raise SeriesDivergenceError(f"2F1({a},{b};{c};z) is not defined at z >= 1 here")

    if _terminating_degree(c - a, c - b) is not None:
        return (1.0 - z) ** float(c - a - b) * _series(c - a, c - b, c, z)

    out = np.empty_like(z)
    masks = {
        "direct": (z >= DIRECT_LOWER) & (z <= DIRECT_UPPER),
        "pfaff": (z >= PFAFF_LOWER) & (z < DIRECT_LOWER),
        "inverse": z < PFAFF_LOWER,
        "one_minus": z > DIRECT_UPPER,
    }
    for region, mask in masks.items():
        if mask.any():
            out[mask] = _REGIONS[region](a, b, c, z[mask])
    return out


def hyp2f1_real(a: HalfInt, b: HalfInt, c: HalfInt, z: ArrayLike) -> ArrayLike:
    """2F1(a, b; c; z) for real z < 1 (any z when the series terminates)"""
    a, b, c = HalfInt.of(a), HalfInt.of(b), HalfInt.of(c)
    values = np.atleast_1d(np.asarray(z, dtype=float))
    result = _hyp2f1_array(a, b, c, values)
    if np.ndim(z) == 0:
        return float(result[0])
    return result


def seam_continuity(a: HalfInt, b: HalfInt, c: HalfInt) -> float:
    """Largest relative disagreement of neighbouring evaluators at the region seams"""
    a, b, c = HalfInt.of(a), HalfInt.of(b), HalfInt.of(c)
    _check_c(c)
    if _terminating_degree(a, b) is not None or _terminating_degree(c - a, c - b) is not None:
        return 0.0

    pairs = [
        ("direct", "pfaff", DIRECT_LOWER),
        ("pfaff", "inverse", PFAFF_LOWER),
        ("direct", "one_minus", DIRECT_UPPER),
    ]
    worst = 0.0
    for left, right, seam in pairs:
        point = np.array([seam])
        lhs = _REGIONS[left](a, b, c, point)[0]
        rhs = _REGIONS[right](a, b, c, point)[0]
        worst = max(worst, abs(lhs - rhs) / max(abs(lhs), 1.0))
    return worst


def jacobi_phi(params: JacobiParams, t: ArrayLike) -> ArrayLike:
    """phi(t) = 2F1(a, b; lambda2 + 1; -sinh^2 t), even in t with phi(0) = 1"""
    z = -np.sinh(np.asarray(t, dtype=float)) ** 2
    return hyp2f1_real(params.a, params.b, params.c, z)


def jacobi_phi_compact(params: JacobiParams, theta: ArrayLike) -> ArrayLike:
    """phi(i theta) = 2F1(a, b; lambda2 + 1; sin^2 theta) on [0, pi/2)"""
    angles = np.asarray(theta, dtype=float)
    if np.any(angles < 0.0) or np.any(angles > math.pi / 2):
        raise InvalidParameterError("theta must lie in [0, pi/2]")
    z = np.sin(angles) ** 2
    return hyp2f1_real(params.a, params.b, params.c, z)


def _require_positive(t: np.ndarray, which: SolutionBasis):
    if np.any(t <= 0.0):
        raise UnsupportedRegionError(f"{which.value} is evaluated at t > 0 only")


def basis_eval(which: SolutionBasis, params: JacobiParams, t: ArrayLike) -> ArrayLike:
    """
    Evaluate one of the radial solutions

    u1_at_0 is the Jacobi function. u2_at_0 is (sinh t)^(-2 lambda2) times the
    second solution at z=0, the real branch of z^(-lambda2). u_inf_minus and
    u_inf_plus behave like (sinh t)^(-(lambda1+lambda2+1 +/- lambda)) as
    t -> infinity. phi_compact is the Jacobi function at i*theta.

    Args:
        which: Basis to evaluate
        params: Jacobi parameters
        t: Point or array of points

    Returns:
        Real values with the shape of t
    """
    which = SolutionBasis(which)
    a, b, c, lam = params.a, params.b, params.c, params.lam

    if which is SolutionBasis.U1_AT_0:
        _check_c(c)
        return jacobi_phi(params, t)
    if which is SolutionBasis.PHI_COMPACT:
        return jacobi_phi_compact(params, t)

    ts = np.asarray(t, dtype=float)
    _require_positive(ts, which)
    sinh_t = np.sinh(ts)
    z = -(sinh_t ** 2)

    if which is SolutionBasis.U2_AT_0:
        if params.lam2.is_integer:
            raise UnsupportedRegionError(
                f"u2_at_0 needs a non-integer lambda2 (got {params.lam2}); "
                "the logarithmic solution is not implemented"
            )
        return sinh_t ** (-2.0 * float(params.lam2)) * hyp2f1_real(a - c + 1, b - c + 1, 2 - c, z)

    if lam == 0:
        raise UnsupportedRegionError("The solutions at infinity coincide at lambda=0")

    if which is SolutionBasis.U_INF_MINUS:
        if (1 + lam).is_nonpositive_integer():
            raise UnsupportedRegionError(f"u_inf_minus is undefined at lambda={lam}")
        return sinh_t ** (-2.0 * float(b)) * hyp2f1_real(b, b - c + 1, 1 + lam, 1.0 / z)

    if (1 - lam).is_nonpositive_integer():
        raise UnsupportedRegionError(f"u_inf_plus is undefined at lambda={lam}")
    return sinh_t ** (-2.0 * float(a)) * hyp2f1_real(a, a - c + 1, 1 - lam, 1.0 / z)


def _require_connection_domain(params: JacobiParams):
    if params.lam.is_nonpositive_integer():
        raise InvalidParameterError(f"lambda={params.lam} is a non-positive integer")


def kummer_b(params: JacobiParams) -> float:
    """Coefficient of the z=0 singular solution in the decaying solution at infinity"""
    _require_connection_domain(params)
    if params.lam2 == 0:
        raise InvalidParameterError("kummer_b is undefined at lambda2=0")
    lam, lam1, lam2 = params.lam, params.lam1, params.lam2
    return gamma_quotient(
        [lam2, 1 + lam],
        [(-lam1 + lam2 + lam + 1).halve(), (lam1 + lam2 + lam + 1).halve()],
    )


def kummer_a(params: JacobiParams) -> float:
    """kummer_b with lambda2 negated; needs a non-integer lambda2"""
    if params.lam2.is_integer:
        raise UnsupportedRegionError(
            f"kummer_a needs a non-integer lambda2 (got {params.lam2})"
        )
    return kummer_b(params.with_lam2(-params.lam2))


def connection_residual(params: JacobiParams, z_grid) -> float:
    """
    Check g_inf_minus = a g1 + b e^(i pi lambda2) g2 on real z in (-1, 0)

    On z < 0 with the principal branch, e^(i pi lambda2) z^(-lambda2) equals
    (-z)^(-lambda2), so both sides are real. The left side is the 1/z series
    of g_inf_minus moved by Pfaff to the argument 1/(1-z):
    (1-z)^(-b) 2F1(b, lambda + c - b; 1 + lambda; 1/(1-z)).

    Returns:
        max |lhs - rhs| / max(max |lhs|, 1) over the grid
    """
    _require_connection_domain(params)
    if params.lam2.is_integer:
        raise UnsupportedRegionError(
            f"connection_residual needs a non-integer lambda2 (got {params.lam2})"
        )
    z = np.asarray(z_grid, dtype=float)
    if np.any(z <= -1.0) or np.any(z >= 0.0):
        raise InvalidParameterError("z grid must lie in the open interval (-1, 0)")

    a, b, c, lam = params.a, params.b, params.c, params.lam
    w = 1.0 / (1.0 - z)
    lhs = (1.0 - z) ** (-float(b)) * _series(b, lam + c - b, 1 + lam, w)

    g1 = hyp2f1_real(a, b, c, z)
    g2 = (-z) ** (-float(params.lam2)) * hyp2f1_real(a - c + 1, b - c + 1, 2 - c, z)
    rhs = kummer_a(params) * g1 + kummer_b(params) * g2

    residual = float(np.max(np.abs(lhs - rhs)) / max(float(np.max(np.abs(lhs))), 1.0))
    logger.debug(f"Connection residual for {params.lam1},{params.lam2},{params.lam}: {residual:.3e}")
    return residual


def _stencil(f, t: np.ndarray, h: float = FD_STEP):
    f_m2, f_m1, f_0, f_p1, f_p2 = (f(t + k * h) for k in (-2, -1, 0, 1, 2))
    first = (f_m2 - 8.0 * f_m1 + 8.0 * f_p1 - f_p2) / (12.0 * h)
    second = (-f_m2 + 16.0 * f_m1 - 30.0 * f_0 + 16.0 * f_p1 - f_p2) / (12.0 * h * h)
    return f_0, first, second


def ode_residual(params: JacobiParams, basis: SolutionBasis, t_grid) -> float:
    """
    Finite-difference residual of the radial equation

        phi'' + ((2 l1 + 1) tanh t + (2 l2 + 1) coth t) phi' + ((l1 + l2 + 1)^2 - l^2) phi = 0

    or, for phi_compact in theta,

        phi'' - ((2 l1 + 1) tan t - (2 l2 + 1) cot t) phi' - ((l1 + l2 + 1)^2 - l^2) phi = 0

    normalized by max(max |phi|, 1) on the grid.
    """
    basis = SolutionBasis(basis)
    t = np.asarray(t_grid, dtype=float)
    if t.size == 0:
        raise InvalidParameterError("Empty grid")
    if np.min(t) - 2 * FD_STEP <= 0.0:
        raise InvalidParameterError(f"Grid must stay above {2 * FD_STEP} for the stencil")
    if basis is SolutionBasis.PHI_COMPACT and np.max(t) + 2 * FD_STEP >= math.pi / 2:
        raise InvalidParameterError("Compact grid must stay below pi/2 for the stencil")

    def f(points):
        return np.asarray(basis_eval(basis, params, points), dtype=float)

    value, first, second = _stencil(f, t)
    weight1, weight2 = 2.0 * float(params.lam1) + 1.0, 2.0 * float(params.lam2) + 1.0
    eigen = (float(params.lam1) + float(params.lam2) + 1.0) ** 2 - float(params.lam) ** 2

    if basis is SolutionBasis.PHI_COMPACT:
        drift = weight1 * np.tan(t) - weight2 / np.tan(t)
        residual = second - drift * first - eigen * value
    else:
        drift = weight1 * np.tanh(t) + weight2 / np.tanh(t)
        residual = second + drift * first + eigen * value

    return float(np.max(np.abs(residual)) / max(float(np.max(np.abs(value))), 1.0))


def s_transform(lam1: HalfInt, lam2: HalfInt, rho1: HalfInt, rho2: HalfInt, phi_value: ArrayLike, t: ArrayLike) -> ArrayLike:
    """(cosh t)^(lam1 - rho1) (sinh t)^(lam2 - rho2) phi(t)"""
    ts = np.asarray(t, dtype=float)
    if np.any(ts <= 0.0):
        raise InvalidParameterError("s_transform needs t > 0")
    weight = np.cosh(ts) ** float(HalfInt.of(lam1) - HalfInt.of(rho1)) * np.sinh(ts) ** float(
        HalfInt.of(lam2) - HalfInt.of(rho2)
    )
    result = weight * np.asarray(phi_value, dtype=float)
    if np.ndim(result) == 0:
        return float(result)
    return result
