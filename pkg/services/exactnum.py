"""Exact Gamma values at half-integer arguments.

Every Gamma argument in the closed-form constants lies in (1/2)Z, so values
are built from Gamma(1) = 1 and Gamma(1/2) = sqrt(pi) by the recursion
Gamma(x + 1) = x Gamma(x) instead of a general approximation.
"""

import logging
import math
from functools import lru_cache

from models.halfint import GammaValue, HalfInt
from utils.errors import GammaOverflowError, GammaPoleError

logger = logging.getLogger(__name__)

SQRT_PI = math.sqrt(math.pi)

# Gamma(171.5) is the last half-integer value below the float64 ceiling
GAMMA_ARGUMENT_LIMIT = HalfInt(343)


def halfint_parse(text: str) -> HalfInt:
    """
    Parse the textual forms accepted on input

    Args:
        text: "n", "n/2" or a decimal ending in .5 or .0

    Returns:
        Canonical HalfInt
    """
    return HalfInt.parse(text)


@lru_cache(maxsize=4096)
def _gamma_twice(twice: int) -> GammaValue:
    x = HalfInt(twice)
    if x.is_nonpositive_integer():
        return GammaValue(argument=x, is_pole=True)
    if x > GAMMA_ARGUMENT_LIMIT:
        raise GammaOverflowError(f"Gamma({x}) exceeds the floating point range")

    if x.is_integer:
        n = x.as_int()
        return GammaValue(argument=x, value=float(math.factorial(n - 1)))

    if twice > 0:
        # x = k + 1/2
        value = SQRT_PI
        step = 0.5
        while step < float(x):
            value *= step
            step += 1.0
        return GammaValue(argument=x, value=value)

    # Gamma(x) = Gamma(1/2) / (x (x+1) ... (-1/2))
    value = SQRT_PI
    step = float(x)
    while step < 0.5:
        value /= step
        step += 1.0
    if value == 0.0:
        raise GammaOverflowError(f"1/Gamma({x}) exceeds the floating point range")
    return GammaValue(argument=x, value=value)


def gamma_exact(x: HalfInt) -> GammaValue:
    """Gamma at a half-integer; poles are values, not errors"""
    return _gamma_twice(HalfInt.of(x).twice_value)


def rgamma(x: HalfInt) -> float:
    """Reciprocal Gamma, exactly 0.0 at the poles"""
    return gamma_exact(x).reciprocal


def gamma_finite(x: HalfInt) -> float:
    """Gamma value for use in a numerator, where a pole is an error"""
    result = gamma_exact(x)
    if result.is_pole:
        raise GammaPoleError(f"Gamma has a pole at {result.argument}")
    return result.value


def gamma_quotient(numerator, denominator) -> float:
    """
    Product of Gamma values over a product of Gamma values

    A pole in the denominator makes the quotient exactly zero, a pole in the
    numerator raises GammaPoleError.

    Args:
        numerator: Iterable of half-integer arguments
        denominator: Iterable of half-integer arguments

    Returns:
        The quotient as a float
    """
    numerator = [HalfInt.of(arg) for arg in numerator]
    denominator = [HalfInt.of(arg) for arg in denominator]

    value = 1.0
    for arg in denominator:
        value *= rgamma(arg)
    for arg in numerator:
        factor = gamma_finite(arg)
        if value == 0.0:
            continue
        value *= factor
    return value
