"""Metric profiles: built-ins, the expression language and admissibility checks."""

from .core import (
    BUILTIN_NAMES,
    CoshProfile,
    ExprProfile,
    HermiteTailProfile,
    LumpProfile,
    MetricProfile,
    QuadraticProfile,
    ScaledProfile,
    StenzelProfile,
    ValidationReport,
    builtin,
    profile_from_spec,
    validate_kahler,
)
from .dsl import evaluate_constant, parse_profile, to_text

__all__ = [
    "BUILTIN_NAMES",
    "CoshProfile",
    "ExprProfile",
    "HermiteTailProfile",
    "LumpProfile",
    "MetricProfile",
    "QuadraticProfile",
    "ScaledProfile",
    "StenzelProfile",
    "ValidationReport",
    "builtin",
    "evaluate_constant",
    "parse_profile",
    "profile_from_spec",
    "to_text",
    "validate_kahler",
]
