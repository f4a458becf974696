"""Radial potential profiles f(y) and their first four derivatives."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..errors import InvalidParameter
from ..numerics.jet import Jet4, jpow, jsinh
from ..numerics.special import SERIES_CUTOFF, log_ycoth_second, ycoth_derivatives
from . import dsl

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)


def _asarray(y):
    scalar = np.ndim(y) == 0
    return np.atleast_1d(np.asarray(y, dtype=float)), scalar


def _unwrap(values, scalar):
    return tuple(v[0] if scalar else v for v in values)


class MetricProfile:
    """An even potential f; ``omega = (i/2) d dbar (f o y)``.

    Subclasses implement :meth:`_derivatives` for y >= 0 on arrays; parity is
    applied here.  ``f_prime_limit`` is lim f'(y) when known to be finite.
    """

    label: str = "profile"
    analytic_order: int = 4
    f_prime_limit: Optional[float] = None

    def _derivatives(self, y: np.ndarray) -> tuple:
        raise NotImplementedError

    def derivatives(self, y) -> tuple:
        """(f, f', f'', f''', f'''') at y (scalar or array)."""
        arr, scalar = _asarray(y)
        with np.errstate(over="ignore", invalid="ignore"):
            d = self._derivatives(np.abs(arr))
        sign = np.where(arr < 0, -1.0, 1.0)
        out = [d[0], d[1] * sign, d[2], d[3] * sign, d[4]]
        return _unwrap(out, scalar)

    def eval(self, y, order: int = 0):
        if not 0 <= order <= 4:
            raise ValueError("order must be in 0..4")
        return self.derivatives(y)[order]

    def f(self, y):
        return self.eval(y, 0)

    def f1(self, y):
        return self.eval(y, 1)

    def f2(self, y):
        return self.eval(y, 2)

    def log_f2(self, y):
        """log f''(y); overridden where f'' underflows in the far tail."""
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.log(self.f2(y))

    def log_f1(self, y):
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.log(self.f1(y))

    def scaled(self, a: float) -> "MetricProfile":
        return ScaledProfile(self, a)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.label}>"


class QuadraticProfile(MetricProfile):
    label = "quadratic"

    def _derivatives(self, y):
        z = np.zeros_like(y)
        return (y * y, 2.0 * y, z + 2.0, z, z)


class CoshProfile(MetricProfile):
    label = "cosh"

    def _derivatives(self, y):
        c, s = np.cosh(y), np.sinh(y)
        return (c, s, c, s, c)

    def log_f2(self, y):
        y = np.abs(np.asarray(y, dtype=float))
        return y - math.log(2.0) + np.log1p(np.exp(-2.0 * y))


class LumpProfile(MetricProfile):
    """f = pi * y * coth(y)."""

    label = "lump"
    f_prime_limit = math.pi

    def _derivatives(self, y):
        return tuple(math.pi * g for g in ycoth_derivatives(y))

    def log_f2(self, y):
        y = np.abs(np.asarray(y, dtype=float))
        small = y < 1.0
        with np.errstate(divide="ignore", invalid="ignore"):
            near = np.log(np.abs(self.f2(np.where(small, y, 0.5))))
            far = math.log(math.pi) + log_ycoth_second(np.where(small, 1.0, y))
        return np.where(small, near, far)


# (sinh 2y - 2y) / (4 y^3) = sum_j 2^(2j+3) / (4 (2j+3)!) y^(2j)
_STENZEL_Q = tuple(2.0 ** (2 * j + 3) / (4.0 * math.factorial(2 * j + 3)) for j in range(8))


_STENZEL_TAIL = 20.0


def _composite_gl(fn, y: np.ndarray) -> np.ndarray:
    """Integral of fn over [0, y] elementwise (y >= 0), 24-point Gauss-Legendre panels.

    ``fn`` is called once on the full array of nodes.
    """
    n_panels = max(1, int(math.ceil(float(np.max(y)) if y.size else 1.0)))
    width = y / n_panels
    offsets = (np.arange(n_panels)[:, None] + 0.5 * (_GL_NODES[None, :] + 1.0)).ravel()
    nodes = width[..., None] * offsets
    weights = np.tile(_GL_WEIGHTS, n_panels)
    return 0.5 * width * np.sum(fn(nodes) * weights, axis=-1)


class StenzelProfile(MetricProfile):
    """Ricci-flat profile: (f')^3 = c (sinh 2y - 2y) / 4, the odd solution of
    d/dy (f')^3 = c sinh^2 y with f'(0) = 0, and f(0) = 0."""

    def __init__(self, c: float = 3.0):
        if not (c > 0 and math.isfinite(c)):
            raise InvalidParameter(f"Stenzel constant must be positive, got {c!r}")
        self.c = float(c)
        self.label = f"stenzel:c={c:g}"

    def _fprime_jet(self, y: np.ndarray) -> Jet4:
        small = y < SERIES_CUTOFF
        ys = Jet4.variable(np.where(small, y, 0.05))
        y2 = ys * ys
        q = Jet4.constant(np.zeros_like(y) + _STENZEL_Q[-1])
        for coef in reversed(_STENZEL_Q[:-1]):
            q = q * y2 + coef
        series = ys * jpow(q * self.c, 1.0 / 3.0)
        yb = Jet4.variable(np.where(small, 1.0, y))
        closed = jpow((jsinh(yb * 2.0) - yb * 2.0) * (self.c / 4.0), 1.0 / 3.0)
        return Jet4(tuple(np.where(small, s, b) for s, b in zip(series.c, closed.c)))

    def _fprime_value(self, y: np.ndarray) -> np.ndarray:
        small = y < SERIES_CUTOFF
        ys = np.where(small, y, 0.05)
        q = np.polyval(_STENZEL_Q[::-1], ys * ys)
        yb = np.where(small, 1.0, y)
        closed = np.cbrt(self.c / 4.0 * (np.sinh(2.0 * yb) - 2.0 * yb))
        return np.where(small, ys * np.cbrt(self.c * q), closed)

    def _derivatives(self, y):
        d = self._fprime_jet(y).derivatives()
        near = np.minimum(y, _STENZEL_TAIL)
        f = _composite_gl(self._fprime_value, near)
        # Beyond the cutoff f' = (c/8)^(1/3) e^(2y/3) to double precision.
        with np.errstate(over="ignore"):
            tail = 1.5 * (self.c / 8.0) ** (1.0 / 3.0) * (np.exp(2.0 * y / 3.0) - math.exp(2.0 * _STENZEL_TAIL / 3.0))
        f = f + np.where(y > _STENZEL_TAIL, tail, 0.0)
        return (f, d[0], d[1], d[2], d[3])

    def log_f1(self, y):
        y = np.abs(np.asarray(y, dtype=float))
        with np.errstate(divide="ignore"):
            big = np.maximum(y, 10.0)
            tail = 2.0 * big - math.log(2.0) + np.log1p(-np.exp(-4.0 * big) - 4.0 * big * np.exp(-2.0 * big))
            near = np.log(self.f1(np.minimum(y, 10.0)))
            far = (math.log(self.c) + tail - math.log(4.0)) / 3.0
        return np.where(y > 10.0, far, near)

    def log_f2(self, y):
        y = np.abs(np.asarray(y, dtype=float))
        with np.errstate(divide="ignore"):
            log_sinh = y - math.log(2.0) + np.log1p(-np.exp(-2.0 * y))
            return math.log(self.c / 3.0) + 2.0 * log_sinh - 2.0 * self.log_f1(y)


def _hermite_tail_coefficients() -> np.ndarray:
    # odd quintic a t + b t^3 + c t^5 matching g, g', g'' of g(t) = 1 - exp(-t^2) at t = 1
    e = math.exp(-1.0)
    A = np.array([[1.0, 1.0, 1.0], [1.0, 3.0, 5.0], [0.0, 6.0, 20.0]])
    rhs = np.array([1.0 - e, 2.0 * e, -2.0 * e])
    return np.linalg.solve(A, rhs)


class HermiteTailProfile(MetricProfile):
    """Finite volume with superexponential approach of f' to its limit.

    f'(t) = 1 - exp(-t^2) for |t| >= 1, joined on [-1, 1] by the odd quintic
    matching value and two derivatives at t = 1; f(0) = 0.
    """

    label = "hermite-tail"
    f_prime_limit = 1.0
    analytic_order = 4

    def __init__(self):
        self.a, self.b, self.c = _hermite_tail_coefficients()
        self._f_at_1 = self.a / 2 + self.b / 4 + self.c / 6

    def _derivatives(self, y):
        a, b, c = self.a, self.b, self.c
        inner = y <= 1.0
        t = np.where(inner, y, 0.0)
        fi = (
            a * t**2 / 2 + b * t**4 / 4 + c * t**6 / 6,
            a * t + b * t**3 + c * t**5,
            a + 3 * b * t**2 + 5 * c * t**4,
            6 * b * t + 20 * c * t**3,
            6 * b + 60 * c * t**2,
        )
        s = np.where(inner, 1.0, y)
        g = np.exp(-s * s)
        erfc = np.vectorize(math.erfc, otypes=[float])
        fo = (
            self._f_at_1 + (s - 1.0) + 0.5 * math.sqrt(math.pi) * (erfc(s) - math.erfc(1.0)),
            1.0 - g,
            2.0 * s * g,
            (2.0 - 4.0 * s * s) * g,
            (8.0 * s**3 - 12.0 * s) * g,
        )
        return tuple(np.where(inner, i, o) for i, o in zip(fi, fo))

    def log_f2(self, y):
        y = np.abs(np.asarray(y, dtype=float))
        with np.errstate(divide="ignore", invalid="ignore"):
            inner = np.log(self.f2(np.minimum(y, 1.0)))
            outer = math.log(2.0) + np.log(np.maximum(y, 1.0)) - y * y
        return np.where(y <= 1.0, inner, outer)


class ExprProfile(MetricProfile):
    """A profile given by a DSL expression, differentiated by jet arithmetic.

    Evenness is not enforced: the expression is evaluated as written for
    negative y, and :func:`validate_kahler` reports any asymmetry.
    """

    def __init__(self, text: str, f_prime_limit: Optional[float] = None):
        self.text = text
        self.expr = dsl.parse_profile(text)
        self.label = text
        self.f_prime_limit = f_prime_limit

    def derivatives(self, y) -> tuple:
        arr, scalar = _asarray(y)
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            res = dsl.evaluate(self.expr, Jet4.variable(arr))
        if isinstance(res, Jet4):
            out = [np.broadcast_to(v, arr.shape).astype(float) for v in res.derivatives()]
        else:
            z = np.zeros_like(arr)
            out = [z + res, z, z, z, z]
        return _unwrap(out, scalar)


class ScaledProfile(MetricProfile):
    def __init__(self, base: MetricProfile, a: float):
        if not a > 0:
            raise InvalidParameter("scale factor must be positive")
        self.base, self.a = base, float(a)
        self.label = f"{a:g}*({base.label})"
        self.analytic_order = base.analytic_order
        lim = base.f_prime_limit
        self.f_prime_limit = None if lim is None else self.a * lim

    def derivatives(self, y):
        return tuple(self.a * v for v in self.base.derivatives(y))

    def log_f2(self, y):
        return math.log(self.a) + self.base.log_f2(y)

    def log_f1(self, y):
        return math.log(self.a) + self.base.log_f1(y)


BUILTIN_NAMES = ("lump", "stenzel", "quadratic", "cosh", "hermite-tail")


def builtin(name: str, c: Optional[float] = None) -> MetricProfile:
    """One of the shipped profiles: lump, stenzel (c > 0, default 3), quadratic,
    cosh, hermite-tail."""
    key = name.strip().lower()
    if key == "lump":
        return LumpProfile()
    if key == "stenzel":
        return StenzelProfile(3.0 if c is None else c)
    if key == "quadratic":
        return QuadraticProfile()
    if key in ("cosh", "coshinduced"):
        return CoshProfile()
    if key == "hermite-tail":
        return HermiteTailProfile()
    raise InvalidParameter(f"unknown builtin profile {name!r}; choose from {BUILTIN_NAMES}")


def profile_from_spec(spec: str) -> MetricProfile:
    """``lump``, ``stenzel:c=2``, ... or else a DSL expression."""
    head, _, params = spec.partition(":")
    if head.strip().lower() in BUILTIN_NAMES + ("coshinduced",):
        c = None
        if params:
            key, _, value = params.partition("=")
            if key.strip() != "c":
                raise InvalidParameter(f"unknown profile parameter {key!r}")
            c = dsl.evaluate_constant(value)
        return builtin(head, c)
    return ExprProfile(spec)


@dataclass
class ValidationReport:
    label: str
    y_max: float
    min_f1: float
    min_f2: float
    evenness_residual: float
    admissible: bool
    failures: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "y_max": self.y_max,
            "min_f1": self.min_f1,
            "min_f2": self.min_f2,
            "evenness_residual": self.evenness_residual,
            "admissible": self.admissible,
            "failures": list(self.failures),
        }


EVENNESS_TOL = 1e-10


def validate_kahler(p: MetricProfile, y_max: float = 20.0, n_grid: int = 257) -> ValidationReport:
    """Check f' > 0 on (0, y_max], f'' > 0 on [0, y_max] and evenness on a grid."""
    if not y_max > 0:
        raise ValueError("y_max must be positive")
    if n_grid < 16:
        raise ValueError("n_grid must be at least 16")
    grid = np.linspace(0.0, y_max, n_grid)
    f, f1, f2 = p.derivatives(grid)[:3]
    f_neg = p.derivatives(-grid)[0]
    min_f1 = float(np.min(f1[1:]))
    min_f2 = float(np.min(f2))
    with np.errstate(invalid="ignore"):
        residual = float(np.max(np.abs(f - f_neg) / (1.0 + np.abs(f))))
    failures = []
    if not np.all(np.isfinite(np.concatenate([f, f1, f2]))):
        failures.append("non-finite values on the validation grid")
    if not min_f1 > 0:
        failures.append(f"f' is not positive on (0, {y_max:g}]: min f' = {min_f1:.6g}")
    if not min_f2 > 0:
        failures.append(f"f'' is not positive on [0, {y_max:g}]: min f'' = {min_f2:.6g}")
    if not residual <= EVENNESS_TOL:
        failures.append(f"f is not even: residual {residual:.3g}")
    return ValidationReport(p.label, y_max, min_f1, min_f2, residual, not failures, failures)
