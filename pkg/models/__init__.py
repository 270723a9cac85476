from .halfint import HalfInt, GammaValue
from .schemas import (
    ComplexTriple,
    EnumerationBudget,
    JacobiParams,
    KType,
    LieFamily,
    LieLabel,
    NormConstant,
    RadialMeasure,
    RegionKind,
    RegionLabel,
    RepParam,
    Sign,
    SolutionBasis,
    SpaceFormPoint,
    SpectralClass,
    SplitSignature,
    Summand,
)

__all__ = [
    "HalfInt",
    "GammaValue",
    "ComplexTriple",
    "EnumerationBudget",
    "JacobiParams",
    "KType",
    "LieFamily",
    "LieLabel",
    "NormConstant",
    "RadialMeasure",
    "RegionKind",
    "RegionLabel",
    "RepParam",
    "Sign",
    "SolutionBasis",
    "SpaceFormPoint",
    "SpectralClass",
    "SplitSignature",
    "Summand",
]
