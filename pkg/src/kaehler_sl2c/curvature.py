"""Local Kaehler geometry on the diagonal slice diag(z1, 1/z1).

Components follow the convention omega = (i/2) h_ab dz^a ^ dzbar^b and
rho = (i/2) r_ab dz^a ^ dzbar^b, so the scalar curvature is s = h^ab r_ab.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import InadmissibleProfile
from .profiles.core import MetricProfile
from .sl2c import chart_inverse, y_of

RATIO_SERIES_CUTOFF = 1e-4
EXTRAPOLATION_CUTOFF = 0.15
_EXTRAPOLATION_NODES = (0.15, 0.2, 0.3)


@dataclass(frozen=True)
class DiagonalPoint:
    z1: complex

    def __post_init__(self):
        if abs(self.z1) == 0:
            raise ValueError("z1 must be non-zero")

    @property
    def y(self) -> float:
        r = abs(self.z1)
        return float(np.arccosh(max(0.5 * (r * r + 1.0 / (r * r)), 1.0)))

    @classmethod
    def at_y(cls, y: float, phase: float = 0.0) -> "DiagonalPoint":
        """The point with |z1| = e^(y/2) (so that y(point) = y)."""
        return cls(complex(math.exp(0.5 * y) * math.cos(phase), math.exp(0.5 * y) * math.sin(phase)))

    @property
    def chart_coords(self) -> np.ndarray:
        return np.array([self.z1, 0.0, 0.0], dtype=complex)


@dataclass(frozen=True)
class HermitianMetric3:
    """Diagonal hermitian form in the chart (z1, z2, z3) at a point of the slice."""

    h11: float
    h22: float
    h33: float

    @property
    def positive_definite(self) -> bool:
        return self.h11 > 0 and self.h22 > 0 and self.h33 > 0

    def as_matrix(self) -> np.ndarray:
        return np.diag([self.h11, self.h22, self.h33]).astype(complex)

    def __iter__(self):
        return iter((self.h11, self.h22, self.h33))


def fprime_over_sinh(p: MetricProfile, y):
    """f'(y) / sinh(y), continuous through y = 0 where it equals f''(0)."""
    y = np.asarray(y, dtype=float)
    small = np.abs(y) < RATIO_SERIES_CUTOFF
    f1 = p.f1(np.where(small, 1.0, y))
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = f1 / np.sinh(np.where(small, 1.0, y))
    if np.any(small):
        d = p.derivatives(0.0)
        y2 = y * y
        series = (d[2] + d[4] * y2 / 6.0) / (1.0 + y2 / 6.0)
        direct = np.where(small, series, direct)
    return direct[()] if direct.ndim == 0 else direct


def _check_admissible(p: MetricProfile, y: float, d: tuple) -> None:
    if y > 0 and not d[1] > 0:
        raise InadmissibleProfile(f"{p.label}: f'({y:g}) = {d[1]:.6g} is not positive")
    if not d[2] > 0:
        raise InadmissibleProfile(f"{p.label}: f''({y:g}) = {d[2]:.6g} is not positive")


def metric_at(p: MetricProfile, pt: DiagonalPoint) -> HermitianMetric3:
    """h11 = f''(y)/|z1|^2, h22 = h33 = f'(y) / (2 sinh y)."""
    y = pt.y
    d = p.derivatives(y)
    _check_admissible(p, y, d)
    h22 = 0.5 * float(fprime_over_sinh(p, y))
    return HermitianMetric3(float(d[2]) / abs(pt.z1) ** 2, h22, h22)


def ricci_potential(p: MetricProfile, y: float) -> float:
    """rho~(y) = -2 log[(f'/sinh y)^2 f''], so that rho = (i/2) d dbar rho~."""
    d = p.derivatives(y)
    _check_admissible(p, y, d)
    ratio = float(fprime_over_sinh(p, y))
    return -2.0 * math.log(ratio * ratio * float(d[2]))


def _g_derivatives_direct(p: MetricProfile, y: float) -> tuple[float, float]:
    """g' and g'' for g = log(sinh^2 y / (f'' f'^2)), valid away from y = 0."""
    f, f1, f2, f3, f4 = (float(v) for v in p.derivatives(y))
    if not (f1 > 0 and f2 > 0):
        raise InadmissibleProfile(f"{p.label}: f' or f'' not positive at y = {y:g}")
    coth = 1.0 / math.tanh(y)
    csch2 = 1.0 / math.sinh(y) ** 2
    g1 = 2.0 * coth - f3 / f2 - 2.0 * f2 / f1
    g2 = -2.0 * csch2 - (f4 * f2 - f3 * f3) / (f2 * f2) - 2.0 * (f3 * f1 - f2 * f2) / (f1 * f1)
    return g1, g2


def _extrapolate_even(values: list[float], y: float) -> tuple[float, float]:
    """Fit a + b y^2 + c y^4 through the extrapolation nodes; also return the
    difference from the two-node (a + b y^2) fit as an error estimate."""
    t = np.array(_EXTRAPOLATION_NODES) ** 2
    quad = np.polyfit(t, values, 2)
    lin = np.polyfit(t[:2], values[:2], 1)
    est = float(np.polyval(quad, y * y))
    return est, abs(est - float(np.polyval(lin, y * y)))


def _slice_functions(p: MetricProfile, y: float) -> tuple[float, float, float]:
    """(g'', g'/sinh y, s) at y >= 0."""
    if y >= EXTRAPOLATION_CUTOFF:
        g1, g2 = _g_derivatives_direct(p, y)
        f1, f2 = float(p.f1(y)), float(p.f2(y))
        return g2, g1 / math.sinh(y), 2.0 * g2 / f2 + 4.0 * g1 / f1
    rows = [_slice_functions(p, node) for node in _EXTRAPOLATION_NODES]
    return tuple(_extrapolate_even([r[k] for r in rows], y)[0] for k in range(3))


def ricci_components(p: MetricProfile, pt: DiagonalPoint) -> HermitianMetric3:
    """r11 = 2 g''/|z1|^2, r22 = r33 = g'/sinh y with g = log(sinh^2 y/(f'' f'^2))."""
    y = pt.y
    d = p.derivatives(y)
    _check_admissible(p, y, d)
    g2, g1_over_sinh, _ = _slice_functions(p, y)
    return HermitianMetric3(2.0 * g2 / abs(pt.z1) ** 2, g1_over_sinh, g1_over_sinh)


def scalar_curvature(p: MetricProfile, y: float, *, with_error: bool = False):
    """s = 2/(f'' f'^2) d/dy[(f')^2 g'] = 2 g''/f'' + 4 g'/f'.

    Below y = 0.15 the value is extrapolated from y in {0.15, 0.2, 0.3} by a
    quadratic in y^2 (s is even).
    """
    y = abs(float(y))
    d = p.derivatives(y)
    _check_admissible(p, y, d)
    if y >= EXTRAPOLATION_CUTOFF:
        s = _slice_functions(p, y)[2]
        return (s, 0.0) if with_error else s
    values = [_slice_functions(p, node)[2] for node in _EXTRAPOLATION_NODES]
    s, err = _extrapolate_even(values, y)
    return (s, err) if with_error else s


class RicciClass(enum.Enum):
    POSITIVE_DEFINITE = "PositiveDefinite"
    NEGATIVE_DEFINITE = "NegativeDefinite"
    FLAT = "Flat"
    MIXED = "Indefinite/Mixed"


def classify_ricci(p: MetricProfile, y_max: float = 8.0, n_grid: int = 41) -> RicciClass:
    """Sign pattern of the Ricci components over y in [0, y_max]."""
    comps, scale = [], 0.0
    for y in np.linspace(0.0, y_max, n_grid):
        pt = DiagonalPoint.at_y(float(y))
        r = ricci_components(p, pt)
        h = metric_at(p, pt)
        comps.extend([r.h11, r.h22])
        scale = max(scale, abs(h.h11), abs(h.h22))
    comps = np.array(comps)
    if np.max(np.abs(comps)) <= 1e-6 * max(scale, 1.0):
        return RicciClass.FLAT
    if np.all(comps > 0):
        return RicciClass.POSITIVE_DEFINITE
    if np.all(comps < 0):
        return RicciClass.NEGATIVE_DEFINITE
    return RicciClass.MIXED


# -- the potential and metric anywhere in the chart (oracle inputs) --------


def potential_on_chart(p: MetricProfile):
    """z -> f(y(eps^-1(z))) for z in C^3."""

    def F(z):
        return float(p.f(float(y_of(chart_inverse(*z)))))

    return F


def chart_metric(p: MetricProfile, z) -> np.ndarray:
    """Full 3x3 h_ab = d^2 (f o y) / dz_a dzbar_b at a chart point with y > 0.

    Uses f o y = Phi(x) with x = |Z|^2 / 2, Z = (z1, z2, z3, (1 + z2 z3)/z1).
    """
    z1, z2, z3 = (complex(v) for v in z)
    u = (1.0 + z2 * z3) / z1
    Z = np.array([z1, z2, z3, u])
    J = np.zeros((4, 3), dtype=complex)
    J[0, 0] = J[1, 1] = J[2, 2] = 1.0
    J[3] = (-u / z1, z3 / z1, z2 / z1)
    dx = 0.5 * J.T @ np.conj(Z)
    ddx = 0.5 * J.T @ np.conj(J)
    x = 0.5 * float(np.sum(np.abs(Z) ** 2))
    y = math.acosh(max(x, 1.0))
    _, f1, f2 = (float(v) for v in p.derivatives(y)[:3])
    sh = math.sinh(y)
    phi1 = f1 / sh
    phi2 = (f2 - f1 / math.tanh(y)) / (sh * sh)
    return phi1 * ddx + phi2 * np.outer(dx, np.conj(dx))


def log_det_chart_metric(p: MetricProfile):
    def G(z):
        return math.log(np.linalg.det(chart_metric(p, z)).real)

    return G


# -- curve export ----------------------------------------------------------

CURVE_COLUMNS = ("y", "s", "rho_potential", "h11", "h22", "r11", "r22")


def curve_rows(p: MetricProfile, ys) -> list[dict]:
    rows = []
    for y in ys:
        pt = DiagonalPoint.at_y(float(y))
        h = metric_at(p, pt)
        r = ricci_components(p, pt)
        rows.append({
            "y": float(y),
            "s": scalar_curvature(p, float(y)),
            "rho_potential": ricci_potential(p, float(y)),
            "h11": h.h11,
            "h22": h.h22,
            "r11": r.h11,
            "r22": r.h22,
        })
    return rows


def curve_csv(p: MetricProfile, ys) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CURVE_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in curve_rows(p, ys):
        writer.writerow({k: repr(v) for k, v in row.items()})
    return buf.getvalue()
