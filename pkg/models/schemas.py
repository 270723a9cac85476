from enum import Enum
import math
from typing import List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, ValidationInfo, field_validator, model_validator

from models.halfint import HalfInt
from utils.errors import DegenerateSignatureError, InvalidParameterError, UnknownLabelError


class Sign(str, Enum):
    PLUS = "+"
    MINUS = "-"

    @property
    def factor(self) -> int:
        return 1 if self is Sign.PLUS else -1

    def flip(self) -> "Sign":
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS

    @classmethod
    def from_factor(cls, factor: int) -> "Sign":
        return cls.PLUS if factor > 0 else cls.MINUS


class RegionKind(str, Enum):
    """The three sign pairs (delta, eps) carrying discrete spectrum"""

    MINUS_PLUS = "-+"
    PLUS_PLUS = "++"
    PLUS_MINUS = "+-"

    @property
    def delta(self) -> Sign:
        return Sign(self.value[0])

    @property
    def eps(self) -> Sign:
        return Sign(self.value[1])

    @property
    def is_compact(self) -> bool:
        return self is RegionKind.PLUS_PLUS

    @classmethod
    def from_signs(cls, delta: Sign, eps: Sign) -> "RegionKind":
        return cls(f"{delta.value}{eps.value}")


class RegionLabel(str, Enum):
    MINUS_PLUS = "-+"
    PLUS_PLUS = "++"
    PLUS_MINUS = "+-"
    BOUNDARY = "boundary"


class SolutionBasis(str, Enum):
    """Solutions of the radial hypergeometric equation"""

    U1_AT_0 = "u1_at_0"
    U2_AT_0 = "u2_at_0"
    U_INF_PLUS = "u_inf_plus"
    U_INF_MINUS = "u_inf_minus"
    PHI_COMPACT = "phi_compact"


class KType(BaseModel):
    """H^m(R^p) on the O(p) factor tensored with H^n(R^q) on the O(q) factor"""
    m: int = Field(..., ge=0, description="Degree on the O(p) factor")
    n: int = Field(..., ge=0, description="Degree on the O(q) factor")

    class Config:
        frozen = True


class RepParam(BaseModel):
    """Label (p, q, eps, lambda) of an irreducible unitary representation"""
    p: int = Field(..., ge=0)
    q: int = Field(..., ge=0)
    eps: Sign = Field(Sign.PLUS, description="Sign; '-' is the (q,p) swap of '+'")
    lam: HalfInt = Field(..., alias="lambda", description="Spectral parameter")

    class Config:
        frozen = True
        populate_by_name = True
        json_schema_extra = {
            "example": {"p": 3, "q": 2, "eps": "+", "lambda": "7/2"}
        }

    @model_validator(mode="after")
    def check_admissible(self):
        # Import here to avoid circular imports
        from services.repparams import a_contains, a_enumerate, a_minimum_twice

        if not a_contains(self.p, self.q, self.eps, self.lam):
            start = a_minimum_twice(self.p, self.q, self.eps)
            if start is None:
                hint = f"A_{self.eps.value}({self.p},{self.q}) is empty"
            else:
                members = a_enumerate(self.p, self.q, self.eps, HalfInt(max(start, 0) + 4))
                hint = "admissible values: " + ", ".join(str(m) for m in members) + ", ..."
            raise InvalidParameterError(
                f"lambda={self.lam} is not in A_{self.eps.value}({self.p},{self.q})", hint=hint
            )
        return self

    def normalized(self) -> "RepParam":
        """The eps=+ label of the isomorphic (q,p) data"""
        if self.eps is Sign.PLUS:
            return self
        return RepParam(p=self.q, q=self.p, eps=Sign.PLUS, lam=self.lam)


class SplitSignature(BaseModel):
    """Subgroup O(p1,q1) x O(p2,q2) of O(p1+p2, q1+q2)"""
    p1: int = Field(..., ge=0)
    q1: int = Field(..., ge=0)
    p2: int = Field(..., ge=0)
    q2: int = Field(..., ge=0)

    class Config:
        frozen = True
        json_schema_extra = {"example": {"p1": 2, "q1": 1, "p2": 2, "q2": 2}}

    @model_validator(mode="after")
    def check_factors(self, info: ValidationInfo):
        allow_trivial = bool(info.context and info.context.get("allow_trivial_factor"))
        if not allow_trivial and ((self.p1, self.q1) == (0, 0) or (self.p2, self.q2) == (0, 0)):
            raise DegenerateSignatureError(
                f"Split ({self.p1},{self.q1},{self.p2},{self.q2}) has a trivial factor"
            )
        return self

    @property
    def p(self) -> int:
        return self.p1 + self.p2

    @property
    def q(self) -> int:
        return self.q1 + self.q2

    def swapped(self) -> "SplitSignature":
        """The same subgroup viewed inside O(q,p)"""
        return SplitSignature(p1=self.q1, q1=self.p1, p2=self.q2, q2=self.p2)

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.p1, self.q1, self.p2, self.q2)


class EnumerationBudget(BaseModel):
    max_count: int = Field(..., ge=0, le=100_000, description="Maximum number of members returned")
    total_max: Optional[HalfInt] = Field(None, description="Upper bound on lambda1 + lambda2")


class Summand(BaseModel):
    """One constituent pi(delta, lambda1) x pi(eps, lambda2) of the discrete part"""
    delta: Sign
    eps: Sign
    lambda1: HalfInt
    lambda2: HalfInt

    class Config:
        frozen = True
        json_schema_extra = {
            "example": {"delta": "+", "eps": "-", "lambda1": "5/2", "lambda2": "1/2"}
        }

    @property
    def signs(self) -> str:
        return f"{self.delta.value}{self.eps.value}"


class SpectralClass(BaseModel):
    discretely_decomposable: bool
    finite_discrete: bool
    purely_continuous: bool


class JacobiParams(BaseModel):
    """(lambda, lambda1, lambda2) of the radial hypergeometric problem"""
    lam: HalfInt
    lam1: HalfInt
    lam2: HalfInt

    class Config:
        frozen = True

    @model_validator(mode="after")
    def check_half_integral(self):
        if not (self.lam1 + self.lam2 - self.lam).is_integer:
            raise InvalidParameterError(
                "lambda1 + lambda2 - lambda must be an integer "
                f"(got {self.lam1} + {self.lam2} - {self.lam})"
            )
        return self

    @property
    def a(self) -> HalfInt:
        return (self.lam1 + self.lam2 + 1 - self.lam).halve()

    @property
    def b(self) -> HalfInt:
        return (self.lam1 + self.lam2 + 1 + self.lam).halve()

    @property
    def c(self) -> HalfInt:
        return self.lam2 + 1

    def with_lam2(self, lam2: HalfInt) -> "JacobiParams":
        return JacobiParams(lam=self.lam, lam1=self.lam1, lam2=lam2)

    def swapped(self) -> "JacobiParams":
        return JacobiParams(lam=self.lam, lam1=self.lam2, lam2=self.lam1)


class NormConstant(BaseModel):
    kind: RegionKind
    lam1: HalfInt
    lam2: HalfInt
    lam: HalfInt
    value: float


class RadialMeasure(BaseModel):
    """(cosh t)^(2 lam1 + 1) (sinh t)^(2 lam2 + 1) dt, or its cos/sin analogue"""
    lam1: HalfInt
    lam2: HalfInt
    domain: Literal["hyperbolic", "compact"] = "hyperbolic"

    @property
    def integrable_at_zero(self) -> bool:
        return self.lam2 > -1

    @property
    def upper_limit(self) -> float:
        return math.inf if self.domain == "hyperbolic" else math.pi / 2


SPACE_FORM_TOL = 1e-12


class SpaceFormPoint(BaseModel):
    """Point of |x|^2 - |y|^2 = +1 (sign +) or -1 (sign -)"""
    x: Tuple[float, ...]
    y: Tuple[float, ...]
    sign: Sign = Sign.PLUS

    class Config:
        frozen = True

    @model_validator(mode="after")
    def check_quadric(self):
        xs, ys = np.asarray(self.x, dtype=float), np.asarray(self.y, dtype=float)
        form = float(xs @ xs - ys @ ys)
        scale = max(1.0, float(xs @ xs + ys @ ys))
        if abs(form - self.sign.factor) > SPACE_FORM_TOL * scale:
            raise InvalidParameterError(
                f"Point is off the quadric |x|^2-|y|^2={self.sign.factor} (defect {form - self.sign.factor:.3e})"
            )
        return self

    @property
    def p(self) -> int:
        return len(self.x)

    @property
    def q(self) -> int:
        return len(self.y)

    @property
    def x_array(self) -> np.ndarray:
        return np.asarray(self.x, dtype=float)

    @property
    def y_array(self) -> np.ndarray:
        return np.asarray(self.y, dtype=float)

    def as_positive(self) -> "SpaceFormPoint":
        """X(p,q)_- is stored as X(q,p)_+ with the blocks exchanged"""
        if self.sign is Sign.PLUS:
            return self
        return SpaceFormPoint(x=self.y, y=self.x, sign=Sign.PLUS)

    def to_flat(self) -> List[float]:
        return list(self.x) + list(self.y)


class LieFamily(str, Enum):
    SL = "sl"
    GL = "gl"
    SO = "so"
    SP = "sp"
    SPIN = "spin"
    E6 = "e6"
    F4 = "f4"
    CENTER = "C"


SIMPLE_FAMILIES = {LieFamily.SL, LieFamily.SO, LieFamily.SP, LieFamily.SPIN, LieFamily.E6, LieFamily.F4}
EXCEPTIONAL_FAMILIES = {LieFamily.E6, LieFamily.F4, LieFamily.CENTER}


class LieLabel(BaseModel):
    """A summand of a complex reductive Lie algebra, e.g. so(9), gl(4), C"""
    family: LieFamily
    rank_param: Optional[int] = Field(None, ge=1, description="n in sl(n), so(n), sp(n), gl(n), spin(n)")

    class Config:
        frozen = True

    @model_validator(mode="after")
    def check_param(self):
        if self.family in EXCEPTIONAL_FAMILIES:
            if self.rank_param is not None:
                raise UnknownLabelError(f"{self.family.value} takes no rank parameter")
        elif self.rank_param is None:
            raise UnknownLabelError(f"{self.family.value} needs a rank parameter")
        return self

    def __str__(self):
        if self.rank_param is None:
            return self.family.value
        return f"{self.family.value}({self.rank_param})"


class ComplexTriple(BaseModel):
    """(g, h, g') with g simple and h, g' reductive direct sums"""
    g: LieLabel
    h: List[LieLabel] = Field(..., min_length=1)
    gp: List[LieLabel] = Field(..., min_length=1)

    class Config:
        frozen = True
        json_schema_extra = {
            "example": {
                "g": {"family": "so", "rank_param": 9},
                "h": [{"family": "so", "rank_param": 8}],
                "gp": [{"family": "so", "rank_param": 5}, {"family": "so", "rank_param": 4}],
            }
        }

    @field_validator("g")
    @classmethod
    def check_simple(cls, value: LieLabel) -> LieLabel:
        if value.family not in SIMPLE_FAMILIES:
            raise UnknownLabelError(f"{value} is not a simple Lie algebra label")
        return value
