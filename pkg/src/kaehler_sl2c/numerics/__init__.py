"""Numerical kernels: jets, quadrature, tail classification, finite differences."""

from .finite_diff import central_hessian_complex, default_step, real_hessian
from .jet import Jet4, jcosh, jcoth, jexp, jlog, jpow, jsinh, jsqrt, jtanh
from .quadrature import (
    DEFAULT_DELTA,
    DEFAULT_WINDOW,
    ConvergenceVerdict,
    QuadratureResult,
    classify_improper,
    integrate,
    integrate_semi_infinite,
    resolve_borderline,
    tail_log_slopes,
    tail_power_exponent,
)
from .special import ycoth_derivatives

__all__ = [
    "ConvergenceVerdict",
    "DEFAULT_DELTA",
    "DEFAULT_WINDOW",
    "Jet4",
    "QuadratureResult",
    "central_hessian_complex",
    "classify_improper",
    "default_step",
    "integrate",
    "integrate_semi_infinite",
    "jcosh",
    "jcoth",
    "jexp",
    "jlog",
    "jpow",
    "jsinh",
    "jsqrt",
    "jtanh",
    "real_hessian",
    "resolve_borderline",
    "tail_log_slopes",
    "tail_power_exponent",
    "ycoth_derivatives",
]
