"""Moment map for the SU(2) x SU(2) action m -> U1 m U2^-1."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curvature import fprime_over_sinh
from .errors import InadmissibleProfile, NonFinite
from .profiles.core import MetricProfile
from .sl2c import I2, as_matrix, dagger, lie_pair, sl2_point, y_of

IMAG_TOL = 1e-12


def fundamental_field(X: tuple, m) -> np.ndarray:
    """d/dt (e^{ta} m e^{-tb}) at t = 0, i.e. a m - m b."""
    a, b = (as_matrix(v) for v in X)
    m = as_matrix(m)
    return a @ m - m @ b


def _prefactor(p: MetricProfile, m: np.ndarray) -> tuple[float, float]:
    y = float(y_of(m))
    f1 = float(p.f1(y))
    if y > 0 and not f1 > 0:
        raise InadmissibleProfile(f"{p.label}: f'({y:g}) is not positive")
    return y, float(fprime_over_sinh(p, y))


@dataclass(frozen=True)
class MomentValue:
    """mu(m) as a pair (mu_L, mu_R) with mu(a, b) = tr(mu_L a) + tr(mu_R b)."""

    mu_L: np.ndarray
    mu_R: np.ndarray

    def evaluate(self, X: tuple) -> float:
        a, b = (as_matrix(v) for v in X)
        val = np.trace(self.mu_L @ a) + np.trace(self.mu_R @ b)
        if abs(val.imag) > IMAG_TOL * max(1.0, abs(val.real)):
            raise NonFinite(f"moment pairing has imaginary part {val.imag:.3g}")
        return float(val.real)

    def norm_sq(self) -> float:
        """Dual norm for <a, a> = -tr a^2 on each factor."""
        return float(-(np.trace(self.mu_L @ self.mu_L) + np.trace(self.mu_R @ self.mu_R)).real)

    def component_norms(self) -> tuple[float, float]:
        return (
            math.sqrt(max(float(-np.trace(self.mu_L @ self.mu_L).real), 0.0)),
            math.sqrt(max(float(-np.trace(self.mu_R @ self.mu_R).real), 0.0)),
        )

    def to_dict(self) -> dict:
        def pack(mat):
            return [[[float(v.real), float(v.imag)] for v in row] for row in mat]

        return {"mu_L": pack(self.mu_L), "mu_R": pack(self.mu_R)}


def moment_value(p: MetricProfile, m) -> MomentValue:
    m = sl2_point(m)
    _, ratio = _prefactor(p, m)
    left = m @ dagger(m)
    right = dagger(m) @ m
    mu_L = 0.25j * ratio * (left - 0.5 * np.trace(left) * I2)
    mu_R = -0.25j * ratio * (right - 0.5 * np.trace(right) * I2)
    return MomentValue(mu_L, mu_R)


def moment(p: MetricProfile, m, X: tuple) -> float:
    """mu(m)[a, b] = (i/4) (f'(y)/sinh y) tr(m m^+ a - m^+ m b)."""
    a, b = lie_pair(*X)
    m = sl2_point(m)
    _, ratio = _prefactor(p, m)
    val = 0.25j * ratio * np.trace(m @ dagger(m) @ a - dagger(m) @ m @ b)
    if abs(val.imag) > IMAG_TOL * max(1.0, abs(val.real)):
        raise NonFinite(f"moment has imaginary part {val.imag:.3g}")
    return float(val.real)


def moment_norm_sq(p: MetricProfile, m) -> float:
    """|mu(m)|^2 = f'(y(m))^2 / 4."""
    y = float(y_of(sl2_point(m)))
    return 0.25 * float(p.f1(y)) ** 2


def moment_image_contains(p: MetricProfile, target: tuple, tol: float = 1e-10) -> bool:
    """Whether some mu(m) has component norms (|mu_L|, |mu_R|) = target.

    The image is |mu_L| = |mu_R| in [0, f'(inf) / (2 sqrt 2)).
    """
    alpha, beta_ = (float(v) for v in target)
    if alpha < 0 or beta_ < 0:
        raise ValueError("norms must be nonnegative")
    if abs(alpha - beta_) > tol:
        return False
    from .global_geom import f_prime_limit

    limit = f_prime_limit(p)
    return math.isinf(limit) or alpha < limit / (2.0 * math.sqrt(2.0))


def chart_field(X: tuple, m) -> np.ndarray:
    """Holomorphic chart components (dz1, dz2, dz3) of the fundamental field."""
    v = fundamental_field(X, m)
    return np.array([v[0, 0], v[0, 1], v[1, 0]])


def kaehler_pairing(h: np.ndarray, u: np.ndarray, v: np.ndarray) -> float:
    """omega(u, v) for omega = (i/2) h_ab dz^a ^ dzbar^b on holomorphic components."""
    return float(-np.imag(u @ h @ np.conj(v)))
