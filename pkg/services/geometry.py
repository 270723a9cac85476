"""Space forms X(p,q), the level function mu and the coordinates Phi of the three open regions.

A point of X(p,q) = {|x|^2 - |y|^2 = 1} is split as (u', u'', v', v'') along
the subgroup signature, and mu = |u'|^2 - |v'|^2. The regions are

    -+   mu < 0
    ++   0 < mu < 1
    +-   mu > 1

Holographic images vanish outside their region, so callers can extend them
by zero across the boundary.
"""

import logging
import math
from typing import Callable, Tuple

import numpy as np

from models.halfint import HalfInt
from models.schemas import (
    JacobiParams,
    RegionKind,
    RegionLabel,
    Sign,
    SpaceFormPoint,
    SplitSignature,
)
from services.hypergeom import FD_STEP, jacobi_phi, jacobi_phi_compact, s_transform
from services.parseval import integrate_radial
from services.repparams import rho
from utils.errors import InvalidParameterError

logger = logging.getLogger(__name__)

BOUNDARY_TOL = 1e-12


def _require_ambient(split: SplitSignature, pt: SpaceFormPoint):
    if pt.sign is not Sign.PLUS or pt.p != split.p or pt.q != split.q:
        raise InvalidParameterError(
            f"Point of X({pt.p},{pt.q})_{pt.sign.value} does not lie on X({split.p},{split.q})_+"
        )


def _blocks(split: SplitSignature, pt: SpaceFormPoint):
    x, y = pt.x_array, pt.y_array
    return x[: split.p1], x[split.p1 :], y[: split.q1], y[split.q1 :]


def mu_level(split: SplitSignature, pt: SpaceFormPoint) -> float:
    """
    Level function |u'|^2 - |v'|^2

    Args:
        split: Subgroup signature
        pt: Point on X(p1+p2, q1+q2)_+

    Returns:
        mu(pt)
    """
    _require_ambient(split, pt)
    u1, _, v1, _ = _blocks(split, pt)
    return float(u1 @ u1 - v1 @ v1)


def classify_point(split: SplitSignature, pt: SpaceFormPoint) -> RegionLabel:
    mu = mu_level(split, pt)
    if abs(mu) <= BOUNDARY_TOL or abs(mu - 1.0) <= BOUNDARY_TOL:
        return RegionLabel.BOUNDARY
    if mu < 0.0:
        return RegionLabel.MINUS_PLUS
    if mu < 1.0:
        return RegionLabel.PLUS_PLUS
    return RegionLabel.PLUS_MINUS


def _oriented(pt: SpaceFormPoint, p: int, q: int, sign: Sign) -> Tuple[np.ndarray, np.ndarray]:
    """(x, y) of lengths (p, q) with |x|^2 - |y|^2 = sign, accepting the X(q,p)_+ form of X(p,q)_-"""
    if pt.sign is sign and (pt.p, pt.q) == (p, q):
        return pt.x_array, pt.y_array
    if pt.sign is not sign and (pt.p, pt.q) == (q, p):
        return pt.y_array, pt.x_array
    raise InvalidParameterError(
        f"Expected a point of X({p},{q})_{sign.value}, got X({pt.p},{pt.q})_{pt.sign.value}"
    )


def phi_map(
    kind: RegionKind,
    split: SplitSignature,
    z1: SpaceFormPoint,
    z2: SpaceFormPoint,
    t_or_theta: float,
) -> SpaceFormPoint:
    """
    Coordinates Phi of the region of the given kind

        +-   z1 in X(p1,q1)_+, z2 in X(p2,q2)_-   (x1 cosh t, x2 sinh t, y1 cosh t, y2 sinh t)
        -+   z1 in X(p1,q1)_-, z2 in X(p2,q2)_+   (x1 sinh t, x2 cosh t, y1 sinh t, y2 cosh t)
        ++   z1, z2 of sign +, 0 < theta < pi/2   (x1 cos, x2 sin, y1 cos, y2 sin)

    Negative-sign factors may be passed as X(q,p)_+ points.
    """
    kind = RegionKind(kind)
    s = float(t_or_theta)

    if kind is RegionKind.PLUS_PLUS:
        if not 0.0 < s < math.pi / 2:
            raise InvalidParameterError(f"theta must lie in (0, pi/2), got {s}")
        first, second = math.cos(s), math.sin(s)
    else:
        if s <= 0.0:
            raise InvalidParameterError(f"t must be positive, got {s}")
        first, second = math.cosh(s), math.sinh(s)
        if kind is RegionKind.MINUS_PLUS:
            first, second = second, first

    x1, y1 = _oriented(z1, split.p1, split.q1, kind.delta)
    x2, y2 = _oriented(z2, split.p2, split.q2, kind.eps)
    return SpaceFormPoint(
        x=tuple(np.concatenate((x1 * first, x2 * second))),
        y=tuple(np.concatenate((y1 * first, y2 * second))),
        sign=Sign.PLUS,
    )


def _normalized(u: np.ndarray, v: np.ndarray) -> SpaceFormPoint:
    form = float(u @ u - v @ v)
    if form <= 0.0:
        raise InvalidParameterError("Point is too close to the region boundary to invert")
    scale = math.sqrt(form)
    return SpaceFormPoint(x=tuple(u / scale), y=tuple(v / scale), sign=Sign.PLUS)


def phi_inverse(
    kind: RegionKind, split: SplitSignature, pt: SpaceFormPoint
) -> Tuple[SpaceFormPoint, SpaceFormPoint, float]:
    """
    Recover (z1, z2, t or theta) from a point of the region

    Negative-sign factors come back as X(q,p)_+ points. Each factor is
    normalized by its own quadratic form, so both land exactly on their quadric.
    """
    kind = RegionKind(kind)
    label = classify_point(split, pt)
    if label is RegionLabel.BOUNDARY:
        raise InvalidParameterError("Boundary points (mu in {0, 1}) have no coordinates")
    if label.value != kind.value:
        raise InvalidParameterError(f"Point lies in region {label.value}, not {kind.value}")

    mu = mu_level(split, pt)
    u1, u2, v1, v2 = _blocks(split, pt)

    if kind is RegionKind.PLUS_MINUS:
        return _normalized(u1, v1), _normalized(v2, u2), math.acosh(math.sqrt(mu))
    if kind is RegionKind.MINUS_PLUS:
        return _normalized(v1, u1), _normalized(u2, v2), math.asinh(math.sqrt(-mu))
    return _normalized(u1, v1), _normalized(u2, v2), math.acos(math.sqrt(mu))


def sample_point(p: int, q: int, rng: np.random.Generator) -> SpaceFormPoint:
    """Random point of X(p,q)_+: Gaussian y, Gaussian direction for x scaled to sqrt(1 + |y|^2)"""
    if p < 1:
        raise InvalidParameterError(f"X({p},{q})_+ is empty")
    y = rng.normal(size=q)
    direction = rng.normal(size=p)
    while not np.any(direction):
        direction = rng.normal(size=p)
    x = direction / np.linalg.norm(direction) * math.sqrt(1.0 + float(y @ y))
    return SpaceFormPoint(x=tuple(x), y=tuple(y), sign=Sign.PLUS)


def _radial_parts(kind: RegionKind, lam1: HalfInt, lam2: HalfInt, rho1: HalfInt, rho2: HalfInt):
    """Jacobi parameters and the (cosh/cos, sinh/sin) exponents in the order the kind uses them"""
    if kind is RegionKind.MINUS_PLUS:
        return lam2, lam1, rho2, rho1
    return lam1, lam2, rho1, rho2


def holographic_radial(
    kind: RegionKind,
    lam1: HalfInt,
    lam2: HalfInt,
    lam: HalfInt,
    rho1: HalfInt,
    rho2: HalfInt,
    t_or_theta,
):
    """
    Radial factor of the holographic kernel

        +-   phi^(l2,l1)(t) (cosh t)^(l1 - r1) (sinh t)^(l2 - r2)
        -+   phi^(l1,l2)(t) (cosh t)^(l2 - r2) (sinh t)^(l1 - r1)
        ++   phi^(l2,l1)(i theta) (cos theta)^(l1 - r1) (sin theta)^(l2 - r2)
    """
    kind = RegionKind(kind)
    lam = HalfInt.of(lam)
    first, second, rho_first, rho_second = _radial_parts(
        kind, HalfInt.of(lam1), HalfInt.of(lam2), HalfInt.of(rho1), HalfInt.of(rho2)
    )
    params = JacobiParams(lam=lam, lam1=first, lam2=second)

    if kind is RegionKind.PLUS_PLUS:
        theta = np.asarray(t_or_theta, dtype=float)
        if np.any(theta <= 0.0) or np.any(theta >= math.pi / 2):
            raise InvalidParameterError("theta must lie in (0, pi/2)")
        value = (
            np.asarray(jacobi_phi_compact(params, theta))
            * np.cos(theta) ** float(first - rho_first)
            * np.sin(theta) ** float(second - rho_second)
        )
        return float(value) if np.ndim(value) == 0 else value

    phi = jacobi_phi(params, t_or_theta)
    return s_transform(first, second, rho_first, rho_second, phi, t_or_theta)


def holographic_density(kind: RegionKind, rho1: HalfInt, rho2: HalfInt, t):
    """Radial part of the invariant measure on the region"""
    kind = RegionKind(kind)
    r1, r2 = 2.0 * float(rho1) + 1.0, 2.0 * float(rho2) + 1.0
    points = np.asarray(t, dtype=float)
    if kind is RegionKind.PLUS_PLUS:
        return np.cos(points) ** r1 * np.sin(points) ** r2
    if kind is RegionKind.MINUS_PLUS:
        return np.cosh(points) ** r2 * np.sinh(points) ** r1
    return np.cosh(points) ** r1 * np.sinh(points) ** r2


def holographic_norm(
    kind: RegionKind,
    lam1: HalfInt,
    lam2: HalfInt,
    lam: HalfInt,
    rho1: HalfInt,
    rho2: HalfInt,
    tol: float = 1e-10,
) -> float:
    """Integral of |holographic_radial|^2 against the radial measure of the region"""
    kind = RegionKind(kind)

    def integrand(t):
        with np.errstate(over="ignore", invalid="ignore"):
            radial = np.asarray(holographic_radial(kind, lam1, lam2, lam, rho1, rho2, t))
            return radial ** 2 * holographic_density(kind, rho1, rho2, t)

    if kind is RegionKind.PLUS_PLUS:
        return integrate_radial(integrand, upper=math.pi / 2, tol=tol)
    return integrate_radial(integrand, decay_rate=2.0 * float(HalfInt.of(lam)), tol=tol)


def radial_equation_residual(
    kind: RegionKind,
    lam1: HalfInt,
    lam2: HalfInt,
    lam: HalfInt,
    rho1: HalfInt,
    rho2: HalfInt,
    grid,
) -> float:
    """
    Finite-difference residual of the radial eigen-equation satisfied by holographic_radial

        hyperbolic   F'' + ((2 r1 + 1) tanh + (2 r2 + 1) coth) F' = (l^2 - r^2 - A / cosh^2 + B / sinh^2) F
        compact      F'' - ((2 r1 + 1) tan - (2 r2 + 1) cot) F' = (r^2 - l^2 + A / cos^2 + B / sin^2) F

    with A = l1^2 - r1^2, B = l2^2 - r2^2 and r = r1 + r2 + 1. For -+ the
    factor roles are exchanged. The residual is normalized by max(max |F|, 1).
    """
    kind = RegionKind(kind)
    lam = HalfInt.of(lam)
    points = np.asarray(grid, dtype=float)
    if points.size == 0 or np.min(points) - 2 * FD_STEP <= 0.0:
        raise InvalidParameterError(f"Grid must be non-empty and stay above {2 * FD_STEP}")
    if kind is RegionKind.PLUS_PLUS and np.max(points) + 2 * FD_STEP >= math.pi / 2:
        raise InvalidParameterError("Compact grid must stay below pi/2 for the stencil")

    first, second, rho_first, rho_second = _radial_parts(
        kind, HalfInt.of(lam1), HalfInt.of(lam2), HalfInt.of(rho1), HalfInt.of(rho2)
    )

    def radial(s):
        return np.asarray(holographic_radial(kind, lam1, lam2, lam, rho1, rho2, s), dtype=float)

    h = FD_STEP
    f_m2, f_m1, value, f_p1, f_p2 = (radial(points + k * h) for k in (-2, -1, 0, 1, 2))
    d1 = (f_m2 - 8.0 * f_m1 + 8.0 * f_p1 - f_p2) / (12.0 * h)
    d2 = (-f_m2 + 16.0 * f_m1 - 30.0 * value + 16.0 * f_p1 - f_p2) / (12.0 * h * h)

    r1, r2 = float(rho_first), float(rho_second)
    weight1, weight2 = 2.0 * r1 + 1.0, 2.0 * r2 + 1.0
    coeff_a = float(first) ** 2 - r1 ** 2
    coeff_b = float(second) ** 2 - r2 ** 2
    eigen = float(lam) ** 2 - (r1 + r2 + 1.0) ** 2

    if kind is RegionKind.PLUS_PLUS:
        lhs = d2 - (weight1 * np.tan(points) - weight2 / np.tan(points)) * d1
        rhs = (-eigen + coeff_a / np.cos(points) ** 2 + coeff_b / np.sin(points) ** 2) * value
    else:
        lhs = d2 + (weight1 * np.tanh(points) + weight2 / np.tanh(points)) * d1
        rhs = (eigen - coeff_a / np.cosh(points) ** 2 + coeff_b / np.sinh(points) ** 2) * value

    return float(np.max(np.abs(lhs - rhs)) / max(float(np.max(np.abs(value))), 1.0))


def holographic_image(
    kind: RegionKind,
    split: SplitSignature,
    h: Callable[[SpaceFormPoint, SpaceFormPoint], float],
    pt: SpaceFormPoint,
    lam1: HalfInt,
    lam2: HalfInt,
    lam: HalfInt,
) -> float:
    """
    Value at pt of the holographic image of h, a function on the product of the factor space forms

    Zero outside the region of the given kind, including its boundary.
    """
    kind = RegionKind(kind)
    if classify_point(split, pt).value != kind.value:
        return 0.0
    z1, z2, s = phi_inverse(kind, split, pt)
    radial = holographic_radial(
        kind, lam1, lam2, lam, rho(split.p1, split.q1), rho(split.p2, split.q2), s
    )
    return float(h(z1, z2)) * float(radial)
