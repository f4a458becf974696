"""Adaptive Gauss-Kronrod (7/15) quadrature and tail classification."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Literal, Optional

import numpy as np

from ..errors import NoConvergence, NonFinite

_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
# Full 15-node abscissae on [-1, 1] and matching weights.
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_K_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
_G_WEIGHTS = np.zeros(15)
for _i, _w in zip((1, 3, 5), _WG[:3]):
    _G_WEIGHTS[_i] = _w
    _G_WEIGHTS[14 - _i] = _w
_G_WEIGHTS[7] = _WG[3]

RULE_SIZE = 15
DEFAULT_PANEL_BUDGET = 10_000


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int


def _evaluate(fn, xs: np.ndarray, vectorized: bool) -> np.ndarray:
    if vectorized:
        ys = np.asarray(fn(xs), dtype=float)
        if ys.shape != xs.shape:
            ys = np.broadcast_to(ys, xs.shape).astype(float)
    else:
        ys = np.array([fn(float(x)) for x in xs], dtype=float)
    if not np.all(np.isfinite(ys)):
        bad = xs[~np.isfinite(ys)][0]
        raise NonFinite(f"integrand is not finite at {bad!r}")
    return ys


def _panel(fn, a: float, b: float, vectorized: bool) -> tuple[float, float]:
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    ys = _evaluate(fn, mid + half * _NODES, vectorized)
    kronrod = half * float(np.dot(_K_WEIGHTS, ys))
    gauss = half * float(np.dot(_G_WEIGHTS, ys))
    return kronrod, abs(kronrod - gauss)


def integrate(
    fn: Callable,
    a: float,
    b: float,
    tol: float = 1e-10,
    *,
    max_panels: int = DEFAULT_PANEL_BUDGET,
    vectorized: bool = False,
) -> QuadratureResult:
    """Adaptive G7/K15 integration of ``fn`` over the finite interval [a, b].

    Panels are bisected worst-first until the summed error estimate drops below
    ``tol * max(1, |value|)``.  Set ``vectorized`` when ``fn`` accepts arrays.
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError("integration limits must be finite")
    if a > b:
        raise ValueError("require a <= b")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if a == b:
        return QuadratureResult(0.0, 0.0, 0)

    value, err = _panel(fn, a, b, vectorized)
    heap = [(-err, a, b, value, err)]
    total, total_err = value, err
    evaluations = RULE_SIZE
    panels = 1
    while total_err > tol * max(1.0, abs(total)):
        if panels >= max_panels:
            raise NoConvergence(
                f"panel budget {max_panels} exhausted (error {total_err:.3g}, value {total:.6g})"
            )
        _, lo, hi, v, e = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not (lo < mid < hi):
            raise NoConvergence(f"panel [{lo!r}, {hi!r}] cannot be bisected further")
        v1, e1 = _panel(fn, lo, mid, vectorized)
        v2, e2 = _panel(fn, mid, hi, vectorized)
        evaluations += 2 * RULE_SIZE
        panels += 1
        total += v1 + v2 - v
        total_err += e1 + e2 - e
        heapq.heappush(heap, (-e1, lo, mid, v1, e1))
        heapq.heappush(heap, (-e2, mid, hi, v2, e2))
    # Re-sum to shed drift accumulated by the incremental updates.
    total = math.fsum(item[3] for item in heap)
    total_err = math.fsum(item[4] for item in heap)
    return QuadratureResult(total, total_err, evaluations)


def integrate_semi_infinite(
    fn: Callable,
    a: float,
    tol: float = 1e-10,
    *,
    max_panels: int = DEFAULT_PANEL_BUDGET,
    vectorized: bool = False,
) -> QuadratureResult:
    """Integrate ``fn`` over [a, inf) via y = a - log(1 - t), t in [0, 1).

    The transformed integrand is fn(y) / (1 - t); it is evaluated in the
    variable u = 1 - t so that abscissae close to t = 1 keep full precision.
    """

    def transformed(u):
        u = np.asarray(u, dtype=float)
        y = a - np.log(u)
        vals = fn(y) if vectorized else np.array([fn(float(v)) for v in np.atleast_1d(y)]).reshape(y.shape)
        vals = np.asarray(vals, dtype=float)
        with np.errstate(over="ignore", invalid="ignore"):
            out = vals / u
        # A vanished integrand contributes nothing even where 1/u is huge.
        return np.where(vals == 0.0, 0.0, out)

    return integrate(transformed, 0.0, 1.0, tol, max_panels=max_panels, vectorized=True)


# ---------------------------------------------------------------------------
# Tail classification


@dataclass(frozen=True)
class ConvergenceVerdict:
    """Outcome of classifying an improper integral over [a, inf).

    For convergent integrals evaluated in log space the true value is
    ``value * exp(log_scale)``.
    """

    kind: Literal["convergent", "divergent", "borderline"]
    value: Optional[float] = None
    error: Optional[float] = None
    tail_exponent: Optional[float] = None
    log_scale: float = 0.0

    @property
    def is_convergent(self) -> bool:
        return self.kind == "convergent"

    @property
    def is_divergent(self) -> bool:
        return self.kind == "divergent"

    @property
    def is_borderline(self) -> bool:
        return self.kind == "borderline"

    @property
    def log_value(self) -> Optional[float]:
        if self.value is None or self.value <= 0:
            return None
        return math.log(self.value) + self.log_scale

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind, "tail_exponent": self.tail_exponent}
        if self.is_convergent:
            out["log_value"] = self.log_value
            out["value"] = self.value * math.exp(self.log_scale) if self.log_scale < 700 else None
        return out


DEFAULT_WINDOW = (30.0, 60.0)
DEFAULT_DELTA = 0.05
_SLOPE_GRID = 61


def _as_log(fn: Callable) -> Callable[[float], float]:
    def log_fn(y: float) -> float:
        v = fn(y)
        if not math.isfinite(v):
            raise NonFinite(f"integrand overflowed at y = {y!r}; evaluate it in log space")
        if v <= 0:
            raise NonFinite(f"integrand is not positive at y = {y!r}")
        return math.log(v)

    return log_fn


def tail_log_slopes(
    log_fn: Callable[[float], float],
    window: tuple[float, float] = DEFAULT_WINDOW,
    n: int = _SLOPE_GRID,
    vectorized: bool = False,
) -> np.ndarray:
    """Central-difference estimates of d/dy log fn on an n-point grid of ``window``."""
    y0, y1 = window
    if not y0 < y1:
        raise ValueError("window must satisfy Y0 < Y1")
    step = 1e-3 * max(1.0, y1)
    grid = np.linspace(y0, y1, n)
    if vectorized:
        hi = np.asarray(log_fn(grid + step), dtype=float)
        lo = np.asarray(log_fn(grid - step), dtype=float)
    else:
        hi = np.array([log_fn(float(y + step)) for y in grid])
        lo = np.array([log_fn(float(y - step)) for y in grid])
    bad = ~(np.isfinite(hi) & np.isfinite(lo))
    if bad.any():
        raise NonFinite(f"log-integrand is not finite near y = {grid[bad][0]!r}")
    return (hi - lo) / (2.0 * step)


def classify_improper(
    fn: Optional[Callable[[float], float]],
    a: float,
    window: tuple[float, float] = DEFAULT_WINDOW,
    delta: float = DEFAULT_DELTA,
    tol: float = 1e-10,
    *,
    log_fn: Optional[Callable[[float], float]] = None,
    vectorized: bool = False,
) -> ConvergenceVerdict:
    """Decide whether the integral of a positive ``fn`` over [a, inf) converges.

    The tail log-slope is averaged over ``window``: above ``delta`` the integral
    is declared divergent, below ``-delta`` convergent (and evaluated), otherwise
    borderline.  Pass ``log_fn`` instead of ``fn`` when fn can overflow;
    ``vectorized`` declares that it accepts arrays.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    in_log_space = log_fn is not None
    if log_fn is None:
        if fn is None:
            raise ValueError("need fn or log_fn")
        log_fn = _as_log(fn)
    sigma = float(np.mean(tail_log_slopes(log_fn, window, vectorized=vectorized)))
    if sigma > delta:
        return ConvergenceVerdict("divergent", tail_exponent=sigma)
    if sigma >= -delta:
        return ConvergenceVerdict("borderline", tail_exponent=sigma)

    if not in_log_space:
        res = integrate_semi_infinite(fn, a, tol)
        return ConvergenceVerdict(
            "convergent", value=res.value, error=res.error_estimate, tail_exponent=sigma
        )

    # Scale by the largest log value seen on a coarse grid so exp() stays finite.
    probe = np.concatenate([a + np.geomspace(1e-6, window[1], 400), [a]])
    if vectorized:
        logs = np.asarray(log_fn(probe), dtype=float)
    else:
        logs = np.array([log_fn(float(y)) for y in probe])
    finite = logs[np.isfinite(logs)]
    shift = float(finite.max()) if finite.size else 0.0

    def scaled(y):
        y = np.atleast_1d(np.asarray(y, dtype=float))
        if vectorized:
            lv = np.asarray(log_fn(y), dtype=float)
        else:
            lv = np.array([log_fn(float(v)) for v in y])
        if np.any(np.isnan(lv)):
            raise NonFinite("log-integrand is undefined inside the domain")
        with np.errstate(over="ignore"):
            return np.exp(np.minimum(lv - shift, 700.0))

    res = integrate_semi_infinite(scaled, a, tol, vectorized=True)
    return ConvergenceVerdict(
        "convergent",
        value=res.value,
        error=res.error_estimate,
        tail_exponent=sigma,
        log_scale=shift,
    )


def tail_power_exponent(
    log_fn: Callable[[float], float],
    window: tuple[float, float] = DEFAULT_WINDOW,
    vectorized: bool = False,
) -> float:
    """Mean of y * d/dy log fn over ``window``: the alpha of a y^alpha tail."""
    grid = np.linspace(window[0], window[1], _SLOPE_GRID)
    return float(np.mean(tail_log_slopes(log_fn, window, vectorized=vectorized) * grid))


def resolve_borderline(
    log_fn: Callable[[float], float],
    window: tuple[float, float] = DEFAULT_WINDOW,
    margin: float = 0.1,
    vectorized: bool = False,
) -> Optional[bool]:
    """Settle a borderline tail by its power law: True if the integral diverges
    (alpha > -1 + margin), False if it converges (alpha < -1 - margin), else None."""
    alpha = tail_power_exponent(log_fn, window, vectorized)
    if alpha > -1.0 + margin:
        return True
    if alpha < -1.0 - margin:
        return False
    return None
