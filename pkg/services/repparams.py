"""Admissible parameters A_(+/-)(p,q) and per-representation metadata."""

import logging
from math import comb
from typing import List

from models.halfint import HalfInt
from models.schemas import KType, RepParam, Sign
from utils.errors import InvalidParameterError

logger = logging.getLogger(__name__)


def a_plus_contains(p: int, q: int, lam: HalfInt) -> bool:
    """
    Membership in A_+(p,q)

    Args:
        p: Positive signature
        q: Negative signature
        lam: Candidate parameter

    Returns:
        True if lam lies in A_+(p,q)
    """
    lam = HalfInt.of(lam)
    if p == 1 and q == 0:
        return abs(lam) == HalfInt(1)
    if p <= 1:
        return False
    if q == 0:
        # lambda in Z + p/2 with lambda >= p/2 - 1
        return (lam.twice_value - p) % 2 == 0 and lam.twice_value >= p - 2
    return (lam.twice_value - p - q) % 2 == 0 and lam.twice_value > 0


def a_minus_contains(p: int, q: int, lam: HalfInt) -> bool:
    return a_plus_contains(q, p, lam)


def a_contains(p: int, q: int, eps: Sign, lam: HalfInt) -> bool:
    if Sign(eps) is Sign.PLUS:
        return a_plus_contains(p, q, lam)
    return a_minus_contains(p, q, lam)


def a_nonempty(p: int, q: int, eps: Sign = Sign.PLUS) -> bool:
    if Sign(eps) is Sign.MINUS:
        p, q = q, p
    return p >= 2 or (p, q) == (1, 0)


def a_minimum_twice(p: int, q: int, eps: Sign = Sign.PLUS):
    """Twice the least element of A_eps(p,q), or None if the set is empty"""
    if Sign(eps) is Sign.MINUS:
        p, q = q, p
    if (p, q) == (1, 0):
        return -1
    if p <= 1:
        return None
    if q == 0:
        return p - 2
    return 1 if (p + q) % 2 else 2


def a_enumerate(p: int, q: int, eps: Sign, lambda_max: HalfInt) -> List[HalfInt]:
    """All members of A_eps(p,q) up to lambda_max, increasing"""
    lambda_max = HalfInt.of(lambda_max)
    if lambda_max < 0:
        raise InvalidParameterError(f"lambda_max must be non-negative, got {lambda_max}")

    start = a_minimum_twice(p, q, eps)
    if start is None:
        return []
    if (p, q) == (1, 0) and Sign(eps) is Sign.PLUS or (p, q) == (0, 1) and Sign(eps) is Sign.MINUS:
        return [HalfInt(t) for t in (-1, 1) if t <= lambda_max.twice_value]
    return [HalfInt(t) for t in range(start, lambda_max.twice_value + 1, 2)]


def rho(p: int, q: int) -> HalfInt:
    return HalfInt(p + q - 2)


def b_param(rep: RepParam) -> int:
    """b = lambda - p/2 + q/2 + 1 on the eps=+ form"""
    rep = rep.normalized()
    return (rep.lam - HalfInt(rep.p) + HalfInt(rep.q) + 1).as_int()


def delta_sign(rep: RepParam) -> Sign:
    return Sign.PLUS if b_param(rep) % 2 == 0 else Sign.MINUS


def infinitesimal_character(rep: RepParam) -> List[HalfInt]:
    """Harish-Chandra parameter (lambda, (p+q)/2 - 2, ..., (p+q)/2 - [(p+q)/2])"""
    rep = rep.normalized()
    n = rep.p + rep.q
    half = HalfInt(n)
    return [rep.lam] + [half - j for j in range(2, n // 2 + 1)]


def minimal_ktype(rep: RepParam) -> KType:
    """H^b(R^p) x 1 when b >= 0, the trivial K-type otherwise"""
    normalized = rep.normalized()
    b = b_param(normalized)
    ktype = KType(m=b, n=0) if b >= 0 else KType(m=0, n=0)
    if rep.eps is Sign.MINUS:
        return KType(m=ktype.n, n=ktype.m)
    return ktype


def ktype_support(rep: RepParam, m_max: int) -> List[KType]:
    """
    K-types (m, n) with m - n in 2N + b, both degrees bounded by m_max

    Args:
        rep: Representation label
        m_max: Degree cutoff

    Returns:
        Lexicographically sorted K-types
    """
    if m_max < 0:
        raise InvalidParameterError(f"m_max must be non-negative, got {m_max}")
    normalized = rep.normalized()
    p, q = normalized.p, normalized.q
    b = b_param(normalized)

    support = []
    for m in range(m_max + 1):
        if p == 1 and m > 1:
            break
        for n in range(m_max + 1):
            if q == 1 and n > 1 or q == 0 and n > 0:
                break
            diff = m - n - b
            if diff >= 0 and diff % 2 == 0:
                support.append((m, n))

    if rep.eps is Sign.MINUS:
        support = sorted((n, m) for m, n in support)
    return [KType(m=m, n=n) for m, n in support]


def dim_spherical_harmonics(m: int, p: int) -> int:
    """dim H^m(R^p) = C(m+p-1, p-1) - C(m+p-3, p-1)"""
    if p <= 0:
        raise InvalidParameterError("Spherical harmonics need p >= 1")
    if m < 0:
        raise InvalidParameterError(f"Degree must be non-negative, got {m}")
    if p == 1 and m >= 2:
        raise InvalidParameterError("H^m(R^1) vanishes for m >= 2")
    return _binomial(m + p - 1, p - 1) - _binomial(m + p - 3, p - 1)


def _binomial(k: int, r: int) -> int:
    if k < 0 or k < r:
        return 0
    return comb(k, r)


def gk_dimension(rep: RepParam) -> int:
    if rep.p + rep.q < 2:
        raise InvalidParameterError(f"GK dimension undefined for (p,q)=({rep.p},{rep.q})")
    return rep.p + rep.q - 2


def central_sign(rep: RepParam) -> Sign:
    """Scalar (-1)^(lambda - (p-q) eps / 2 + 1) by which -I acts"""
    exponent = rep.lam - HalfInt(rep.eps.factor * (rep.p - rep.q)) + 1
    return Sign.PLUS if exponent.as_int() % 2 == 0 else Sign.MINUS
