"""Which polynomial degrees are square integrable, and the resulting dim H_poly."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Optional, Union

import numpy as np

from ..errors import NonFinite, NotApplicable, Undetermined
from ..global_geom import f_prime_limit, total_volume
from ..numerics import (
    DEFAULT_DELTA,
    DEFAULT_WINDOW,
    ConvergenceVerdict,
    classify_improper,
    resolve_borderline,
    tail_log_slopes,
)
from ..profiles.core import MetricProfile

DEGREE_CAP = 512
_MAX_WINDOW_SHIFTS = 8
_LOG3 = math.log(3.0)


def log_cosh(y):
    y = np.abs(y)
    return y + np.log1p(np.exp(-2.0 * y)) - math.log(2.0)


def degree_log_integrand(p: MetricProfile, hbar: float, l: int):
    """y -> log[(cosh y)^l e^{-f(y)/2 hbar} d/dy (f'(y))^3], on scalars or arrays.

    The value is -inf wherever any factor vanishes or f overflows.
    """

    def log_fn(y):
        scalar = np.ndim(y) == 0
        y = np.atleast_1d(np.asarray(y, dtype=float))
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            f = np.asarray(p.f(y), dtype=float)
            l1 = np.asarray(p.log_f1(y), dtype=float)
            l2 = np.asarray(p.log_f2(y), dtype=float)
            val = l * log_cosh(y) - f / (2.0 * hbar) + _LOG3 + 2.0 * l1 + l2
        dead = (f == np.inf) | (l1 == -np.inf) | (l2 == -np.inf)
        val = np.where(dead, -np.inf, val)
        if np.any(np.isnan(val)):
            raise NonFinite("log-integrand undefined at some y")
        return float(val[0]) if scalar else val

    return log_fn


def _third_means(slopes: np.ndarray) -> tuple[float, float, float]:
    parts = np.array_split(slopes, 3)
    return tuple(float(np.mean(s)) for s in parts)


def adapted_window(log_fn, window=DEFAULT_WINDOW, delta: float = DEFAULT_DELTA) -> tuple[float, float]:
    """Move the tail window outward while the log-slope is not yet clearly negative
    but still falling across the window (a superexponential tail that has not
    yet overtaken a polynomial factor)."""
    w = tuple(window)
    for _ in range(_MAX_WINDOW_SHIFTS):
        try:
            first, _, last = _third_means(tail_log_slopes(log_fn, w, vectorized=True))
        except NonFinite:
            break
        if 0.5 * (first + last) > -delta and first - last > delta:
            w = (w[1], 2.0 * w[1])
        else:
            break
    return w


def degree_integrable(
    p: MetricProfile, hbar: float, l: int, window=DEFAULT_WINDOW, delta: float = DEFAULT_DELTA
) -> ConvergenceVerdict:
    """Classify int_0^inf (cosh y)^l e^{-f/2 hbar} d(f'^3): is degree l square integrable?

    A borderline tail slope is settled by the tail's power law (y^alpha with
    alpha >= -1 diverges); only a power close to -1 stays borderline.
    """
    if not hbar > 0:
        raise ValueError("hbar must be positive")
    if l < 0:
        raise ValueError("degree must be nonnegative")
    log_fn = degree_log_integrand(p, hbar, l)
    w = adapted_window(log_fn, window, delta)
    verdict = classify_improper(None, 0.0, w, delta, log_fn=log_fn, vectorized=True)
    if not verdict.is_borderline:
        return verdict
    diverges = resolve_borderline(log_fn, w, vectorized=True)
    if diverges is None:
        return verdict
    kind = "divergent" if diverges else "convergent"
    return ConvergenceVerdict(kind, tail_exponent=verdict.tail_exponent)


def degree_decision(p: MetricProfile, hbar: float, l: int) -> tuple[ConvergenceVerdict, Optional[bool]]:
    """(verdict, integrable?), the decision being None for an unsettled borderline."""
    verdict = degree_integrable(p, hbar, l)
    if verdict.is_borderline:
        return verdict, None
    return verdict, verdict.is_convergent


def k_of(p: MetricProfile, window=DEFAULT_WINDOW) -> float:
    """sup{lambda >= 0 : int e^{lambda y} d(f'^3) < inf}, from the tail slope of 3 f'^2 f''.

    Returns +inf for superexponential decay.  Raises NotApplicable when f' is
    unbounded and Undetermined when the slope is unstable across the window.
    """
    if math.isinf(f_prime_limit(p)):
        raise NotApplicable("k is only defined when f' is bounded (finite volume)")

    def log_fn(y: float) -> float:
        return _LOG3 + 2.0 * float(p.log_f1(y)) + float(p.log_f2(y))

    slopes = tail_log_slopes(log_fn, window)
    thirds = _third_means(slopes)
    first, mid, last = thirds
    if first > mid > last and last < 0 and last / first > 1.1:
        return math.inf
    mean = float(np.mean(slopes))
    if max(abs(t - mean) for t in thirds) > 0.1 * abs(mean):
        raise Undetermined(f"tail slope varies across the window: {thirds}")
    return max(-mean, 0.0)


@dataclass
class MaxDegree:
    kind: Literal["finite", "infinite", "undetermined"]
    m: Optional[int] = None
    bounds: Optional[tuple[float, float]] = None
    k: Optional[float] = None
    per_degree: list = field(default_factory=list)
    note: str = ""

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"


def _scan(p, hbar, ls, per_degree) -> dict:
    out = {}
    for l in ls:
        verdict, ok = degree_decision(p, hbar, l)
        per_degree.append((l, verdict))
        out[l] = ok
    return out


def max_degree_m(p: MetricProfile, hbar: float, cap: int = DEGREE_CAP) -> MaxDegree:
    """Largest l whose weight integral converges (Finite), or Infinite / Undetermined."""
    if not hbar > 0:
        raise ValueError("hbar must be positive")
    limit = f_prime_limit(p)
    per_degree: list = []

    if math.isinf(limit):
        decided = _scan(p, hbar, [0], per_degree)
        if decided[0] is False:
            return MaxDegree("finite", -1, per_degree=per_degree)
        l = 1
        last_ok = 0
        while l <= cap:
            decided.update(_scan(p, hbar, [l], per_degree))
            if decided[l] is not True:
                break
            last_ok = l
            l *= 2
        else:
            return MaxDegree("infinite", per_degree=per_degree, note=f"all degrees up to {cap} integrable")
        lo, hi = last_ok, l  # lo integrable, hi not (or undecided)
        while hi - lo > 1:
            mid = (lo + hi) // 2
            decided.update(_scan(p, hbar, [mid], per_degree))
            if decided[mid] is True:
                lo = mid
            else:
                hi = mid
        per_degree.sort(key=lambda t: t[0])
        if decided[hi] is None:
            return MaxDegree("undetermined", per_degree=per_degree, note=f"degree {hi} is borderline")
        return MaxDegree("finite", lo, per_degree=per_degree)

    try:
        k = k_of(p)
    except Undetermined as exc:
        return MaxDegree("undetermined", note=str(exc))
    base = limit / (2.0 * hbar)
    if math.isinf(k):
        probes = [math.ceil(base) + extra for extra in (0, 10, 100)]
        decided = _scan(p, hbar, probes, per_degree)
        if all(v is True for v in decided.values()):
            return MaxDegree("infinite", k=k, per_degree=per_degree,
                             note="finite volume with superexponentially flat f'")
        return MaxDegree("undetermined", k=k, per_degree=per_degree,
                         note="k is infinite but a probed degree is not integrable")

    c = base + k
    lo, hi = max(0, math.floor(c) - 2), math.ceil(c) + 2
    decided = _scan(p, hbar, range(lo, hi + 1), per_degree)
    while lo > 0 and decided[lo] is not True:
        lo -= 1
        decided.update(_scan(p, hbar, [lo], per_degree))
    while decided[hi] is True and hi < cap:
        hi += 1
        decided.update(_scan(p, hbar, [hi], per_degree))
    per_degree.sort(key=lambda t: t[0])
    ls = sorted(decided)
    seq = [decided[l] for l in ls]
    if None in seq:
        return MaxDegree("undetermined", bounds=(c - 1, c), k=k, per_degree=per_degree,
                         note="a borderline degree could not be settled")
    crossings = [i for i in range(1, len(seq)) if seq[i] != seq[i - 1]]
    if len(crossings) > 1 or (crossings and seq[crossings[0]] is True):
        return MaxDegree("undetermined", bounds=(c - 1, c), k=k, per_degree=per_degree,
                         note="integrability is not monotone in the degree")
    m = max((l for l, ok in decided.items() if ok), default=-1)
    return MaxDegree("finite", m, bounds=(c - 1, c), k=k, per_degree=per_degree)


def dim_H_poly(m: Union[int, float, None]) -> Union[int, float]:
    """(m+1)(m+2)(2m+3)/6; infinite m passes through."""
    if m is None or (isinstance(m, float) and math.isinf(m)):
        return math.inf
    m = int(m)
    if m < 0:
        return 0
    return (m + 1) * (m + 2) * (2 * m + 3) // 6


def semiclassical_ratio(p: MetricProfile, hbar: float, m: Optional[int] = None) -> float:
    """dim H_poly (2 pi hbar)^3 / Omega."""
    omega = total_volume(p)
    if math.isinf(omega):
        raise NotApplicable("the ratio needs finite volume")
    if m is None:
        res = max_degree_m(p, hbar)
        if not res.is_finite:
            raise NotApplicable(f"m is {res.kind}")
        m = res.m
    return dim_H_poly(m) * (2.0 * math.pi * hbar) ** 3 / omega
