"""Global invariants: level-set distances, completeness, volumes, curvature integrals."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from .curvature import _slice_functions, fprime_over_sinh, scalar_curvature
from .errors import InadmissibleProfile, LimitUndetermined
from .numerics import classify_improper, integrate, resolve_borderline
from .profiles.core import MetricProfile

BORDERLINE = "Borderline"
MC_SHARD_SIZE = 1 << 16
_DOUBLINGS = 12


def geodesic_distance(p: MetricProfile, a: float, b: float, tol: float = 1e-10) -> float:
    """Distance between the level sets y = a and y = b: (1/sqrt 2) int_a^b sqrt(f'') dy."""
    if not 0 <= a <= b:
        raise ValueError("need 0 <= a <= b")
    if a == b:
        return 0.0

    def integrand(y):
        f2 = p.f2(y)
        if np.any(f2 <= 0):
            raise InadmissibleProfile(f"{p.label}: f'' is not positive on [{a:g}, {b:g}]")
        return np.sqrt(f2)

    return integrate(integrand, a, b, tol, vectorized=True).value / math.sqrt(2.0)


def _half_log_f2(p: MetricProfile) -> Callable[[float], float]:
    def log_fn(y: float) -> float:
        return 0.5 * float(p.log_f2(y))

    return log_fn


def _distance_to_infinity(p: MetricProfile, tol: float = 1e-10):
    return classify_improper(None, 0.0, tol=tol, log_fn=_half_log_f2(p))


def is_complete(p: MetricProfile, tol: float = 1e-10) -> Union[bool, str]:
    """True iff int_0^inf sqrt(f'') diverges.

    A tail that is neither clearly growing nor clearly decaying exponentially is
    settled by its power-law exponent: sqrt(f'') ~ y^alpha diverges for
    alpha >= -1.  Exponents within 0.1 of -1 are reported as Borderline.
    """
    verdict = _distance_to_infinity(p, tol)
    if verdict.is_divergent:
        return True
    if verdict.is_convergent:
        return False
    diverges = resolve_borderline(_half_log_f2(p))
    return BORDERLINE if diverges is None else diverges


def distance_to_infinity(p: MetricProfile, tol: float = 1e-10) -> float:
    """D(0, inf); +inf for complete metrics."""
    complete = is_complete(p, tol)
    if complete is True:
        return math.inf
    if complete == BORDERLINE:
        return math.nan
    verdict = _distance_to_infinity(p, tol)
    return math.exp(verdict.log_value) / math.sqrt(2.0)


def volume_Mr(p: MetricProfile, r: float) -> float:
    """Volume of M_r = {y <= r}: (pi f'(r))^3 / 3."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    return (math.pi * float(p.f1(r))) ** 3 / 3.0


def f_prime_limit(p: MetricProfile) -> float:
    """lim f'(y) as y -> inf, or +inf.

    Uses the profile's declared limit when there is one; otherwise f'(2^k) is
    sampled for k <= 12 and the limit is declared infinite if the last doubling
    still grows f' by more than 1e-8 relative.
    """
    if p.f_prime_limit is not None:
        return float(p.f_prime_limit)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        logs = [float(p.log_f1(2.0 ** k)) for k in range(_DOUBLINGS + 1)]
    prev = logs[0]
    for cur in logs[1:]:
        if math.isnan(cur) or cur == math.inf:
            return math.inf
        if cur < prev - 1e-12 * max(1.0, abs(prev)):
            raise LimitUndetermined(f"{p.label}: f' is not monotone on the doubling grid")
        prev = cur
    if logs[-1] - logs[-2] > math.log1p(1e-8):
        return math.inf
    return math.exp(logs[-1])


def total_volume(p: MetricProfile, quotient: bool = False) -> float:
    """(pi f'(inf))^3 / 3, halved for the PGL(2, C) quotient when requested."""
    lim = f_prime_limit(p)
    vol = math.inf if math.isinf(lim) else (math.pi * lim) ** 3 / 3.0
    return 0.5 * vol if quotient else vol


def integrate_invariant(p: MetricProfile, h: Callable[[float], float], r: float, tol: float = 1e-10) -> float:
    """Integral over M_r of a G-invariant function h(y): (pi^3/3) int_0^r h(y) d(f'^3)."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    if r == 0:
        return 0.0

    def integrand(y):
        f1, f2 = float(p.f1(y)), float(p.f2(y))
        return h(y) * 3.0 * f1 * f1 * f2

    return math.pi ** 3 / 3.0 * integrate(integrand, 0.0, r, tol).value


def scalar_curvature_integral(p: MetricProfile, r: float) -> float:
    """int_{M_r} s = 2 pi^3 f'(r)^2 g'(r) with g = log(sinh^2 y / (f'' f'^2))."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    if r == 0:
        return 0.0
    g1 = _slice_functions(p, r)[1] * math.sinh(r)
    return 2.0 * math.pi ** 3 * float(p.f1(r)) ** 2 * g1


def volume_density(p: MetricProfile, lam) -> np.ndarray:
    """mu_hat(|lambda|) = sqrt(1 + lambda^2)/8 (f'/sinh y)^2 f'' at y = arccosh(1 + 2 lambda^2)."""
    lam = np.asarray(lam, dtype=float)
    y = np.arccosh(1.0 + 2.0 * lam * lam)
    ratio = fprime_over_sinh(p, y)
    return np.sqrt(1.0 + lam * lam) / 8.0 * ratio * ratio * p.f2(y)


def _mc_shard(p: MetricProfile, ell: float, n: int, seq: np.random.SeedSequence) -> tuple[float, float]:
    rng = np.random.default_rng(seq)
    # |lambda| for a uniform point in the ball of radius ell.
    radius = ell * rng.uniform(0.0, 1.0, n) ** (1.0 / 3.0)
    w = volume_density(p, radius)
    return float(np.sum(w)), float(np.sum(w * w))


def monte_carlo_volume(
    p: MetricProfile, r: float, n: int, seed: int = 0, workers: int = 1
) -> tuple[float, float]:
    """Monte-Carlo estimate of vol(M_r) in the coordinates M_r = SU(2) x B_l.

    Samples are drawn uniformly in the ball in fixed-size shards, each with its
    own spawned seed, so the result depends on ``seed`` but not on ``workers``.
    Returns (estimate, standard error).
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    if n < 1:
        raise ValueError("n must be positive")
    if r == 0:
        return 0.0, 0.0
    ell = math.sqrt((math.cosh(r) - 1.0) / 2.0)
    sizes = [MC_SHARD_SIZE] * (n // MC_SHARD_SIZE)
    if n % MC_SHARD_SIZE:
        sizes.append(n % MC_SHARD_SIZE)
    seqs = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = list(zip(sizes, seqs))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: _mc_shard(p, ell, *job), jobs))
    else:
        parts = [_mc_shard(p, ell, *job) for job in jobs]
    total = math.fsum(s for s, _ in parts)
    total_sq = math.fsum(q for _, q in parts)
    mean = total / n
    var = max(total_sq / n - mean * mean, 0.0) * n / max(n - 1, 1)
    scale = 16.0 * math.pi ** 2 * 4.0 * math.pi * ell ** 3 / 3.0
    return scale * mean, scale * math.sqrt(var / n)


@dataclass
class GeometryReport:
    label: str
    total_volume: float
    complete: Union[bool, str]
    D_0_inf: float
    volume_curve: list = field(default_factory=list)
    curvature_integral_curve: list = field(default_factory=list)
    quotient: bool = False

    def to_dict(self) -> dict:
        def num(v):
            if isinstance(v, float) and not math.isfinite(v):
                return "inf" if v > 0 else ("-inf" if v < 0 else "nan")
            return v

        return {
            "profile": self.label,
            "total_volume": num(self.total_volume),
            "volume_is_quotient": self.quotient,
            "complete": self.complete,
            "D_0_inf": num(self.D_0_inf),
            "volume_curve": [[r, v] for r, v in self.volume_curve],
            "curvature_integral_curve": [[r, v] for r, v in self.curvature_integral_curve],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["r", "vol", "s_integral"])
        for (r, v), (_, s) in zip(self.volume_curve, self.curvature_integral_curve):
            writer.writerow([repr(r), repr(v), repr(s)])
        return buf.getvalue()


def geometry_report(
    p: MetricProfile, r_max: float = 5.0, n_points: int = 21, quotient: bool = False, tol: float = 1e-10
) -> GeometryReport:
    rs = [float(r) for r in np.linspace(0.0, r_max, n_points)]
    complete = is_complete(p, tol)
    vol_curve = [(r, volume_Mr(p, r)) for r in rs]
    curv_curve = [(r, scalar_curvature_integral(p, r)) for r in rs]
    if quotient:
        vol_curve = [(r, 0.5 * v) for r, v in vol_curve]
    return GeometryReport(
        label=p.label,
        total_volume=total_volume(p, quotient=quotient),
        complete=complete,
        D_0_inf=distance_to_infinity(p, tol),
        volume_curve=vol_curve,
        curvature_integral_curve=curv_curve,
        quotient=quotient,
    )
