import re
from functools import total_ordering
from typing import Any, Optional, Union

from pydantic import BaseModel, Field
from pydantic_core import core_schema

from utils.errors import InvalidParameterError


_FRACTION = re.compile(r"^([+-]?\d+)\s*/\s*(\d+)$")
_INTEGER = re.compile(r"^[+-]?\d+$")
_DECIMAL = re.compile(r"^([+-]?)(\d+)\.(\d+)$")


@total_ordering
class HalfInt:
    """Exact element of (1/2)Z, stored as twice its value"""

    __slots__ = ("_twice",)

    def __init__(self, twice_value: int):
        if isinstance(twice_value, bool) or not isinstance(twice_value, int):
            raise TypeError(f"twice_value must be an int, got {type(twice_value).__name__}")
        object.__setattr__(self, "_twice", twice_value)

    def __setattr__(self, name, value):
        raise AttributeError("HalfInt is immutable")

    @classmethod
    def of(cls, value: Union["HalfInt", int, float, str]) -> "HalfInt":
        """Coerce ints, exact floats, strings and HalfInts"""
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, bool):
            raise InvalidParameterError(f"Not a half-integer: {value!r}")
        if isinstance(value, int):
            return cls(2 * value)
        if isinstance(value, float):
            twice = 2.0 * value
            if not twice.is_integer():
                raise InvalidParameterError(f"Not a half-integer: {value!r}")
            return cls(int(twice))
        if isinstance(value, str):
            return cls.parse(value)
        raise InvalidParameterError(f"Not a half-integer: {value!r}")

    @classmethod
    def parse(cls, text: str) -> "HalfInt":
        """
        Parse "7/2", "-3", "3.5" or "2.0"

        Args:
            text: Half-integer text

        Returns:
            Canonical HalfInt
        """
        raw = text.strip()
        if _INTEGER.match(raw):
            return cls(2 * int(raw))

        match = _FRACTION.match(raw)
        if match:
            numerator, denominator = int(match.group(1)), int(match.group(2))
            if denominator == 1:
                return cls(2 * numerator)
            if denominator == 2:
                return cls(numerator)
            raise InvalidParameterError(
                f"Unsupported denominator in {text!r}",
                hint="half-integers use denominators 1 or 2",
            )

        match = _DECIMAL.match(raw)
        if match:
            sign = -1 if match.group(1) == "-" else 1
            whole, frac = int(match.group(2)), match.group(3).rstrip("0")
            if frac == "":
                return cls(sign * 2 * whole)
            if frac == "5":
                return cls(sign * (2 * whole + 1))
            raise InvalidParameterError(f"Not a half-integer: {text!r}")

        raise InvalidParameterError(f"Malformed half-integer: {text!r}")

    @property
    def twice_value(self) -> int:
        return self._twice

    @property
    def is_integer(self) -> bool:
        return self._twice % 2 == 0

    def halve(self) -> "HalfInt":
        """Return self/2, which must again lie in (1/2)Z"""
        if self._twice % 2:
            raise InvalidParameterError(f"{self}/2 is not a half-integer")
        return HalfInt(self._twice // 2)

    def as_int(self) -> int:
        if not self.is_integer:
            raise InvalidParameterError(f"{self} is not an integer")
        return self._twice // 2

    def is_nonpositive_integer(self) -> bool:
        return self.is_integer and self._twice <= 0

    def in_two_n(self) -> bool:
        """Membership in 2N = {0, 2, 4, ...}"""
        return self._twice >= 0 and self._twice % 4 == 0

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return HalfInt(self._twice + other._twice)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return HalfInt(self._twice - other._twice)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return HalfInt(other._twice - self._twice)

    def __neg__(self):
        return HalfInt(-self._twice)

    def __abs__(self):
        return HalfInt(abs(self._twice))

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return HalfInt(self._twice * other)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._twice == other._twice

    def __lt__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._twice < other._twice

    def __hash__(self):
        return hash(("HalfInt", self._twice))

    def __float__(self):
        return self._twice / 2.0

    def __str__(self):
        if self._twice % 2 == 0:
            return str(self._twice // 2)
        return f"{self._twice}/2"

    def __repr__(self):
        return f"HalfInt({self})"

    def __reduce__(self):
        return (HalfInt, (self._twice,))

    @classmethod
    def __get_pydantic_core_schema__(cls, source: Any, handler) -> core_schema.CoreSchema:
        return core_schema.no_info_plain_validator_function(
            cls._validate,
            serialization=core_schema.plain_serializer_function_ser_schema(str),
        )

    @classmethod
    def __get_pydantic_json_schema__(cls, schema, handler):
        return {"type": "string", "pattern": r"^-?\d+(/2)?$", "examples": ["7/2", "3"]}

    @classmethod
    def _validate(cls, value: Any) -> "HalfInt":
        return cls.of(value)


def _coerce(value) -> Optional[HalfInt]:
    if isinstance(value, HalfInt):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return HalfInt(2 * value)
    return None


HALF = HalfInt(1)
ZERO = HalfInt(0)
ONE = HalfInt(2)


class GammaValue(BaseModel):
    """Gamma function value at a half-integer: finite or a pole"""

    argument: HalfInt
    is_pole: bool = Field(False, description="True at non-positive integers")
    value: Optional[float] = Field(None, description="Finite value, None at a pole")

    class Config:
        frozen = True

    @property
    def reciprocal(self) -> float:
        if self.is_pole:
            return 0.0
        return 1.0 / self.value
