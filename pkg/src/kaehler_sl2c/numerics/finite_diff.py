"""Central finite differences for real and complex (Wirtinger) Hessians."""

from __future__ import annotations

from typing import Callable, Optional

import numpy as np

from ..errors import StepTooSmall

EPS = np.finfo(float).eps


def default_step(p: np.ndarray) -> float:
    # Second differences balance truncation h^2 against rounding eps/h^2.
    return EPS ** 0.25 * max(1.0, float(np.linalg.norm(p)))


def real_hessian(F: Callable[[np.ndarray], float], x: np.ndarray, h: float) -> np.ndarray:
    """Second-order central-difference Hessian of a real function of real variables."""
    x = np.asarray(x, dtype=float)
    n = x.size
    f0 = F(x)
    H = np.empty((n, n))
    e = np.eye(n) * h
    for i in range(n):
        H[i, i] = (F(x + e[i]) - 2.0 * f0 + F(x - e[i])) / (h * h)
        for j in range(i + 1, n):
            v = (
                F(x + e[i] + e[j]) - F(x + e[i] - e[j]) - F(x - e[i] + e[j]) + F(x - e[i] - e[j])
            ) / (4.0 * h * h)
            H[i, j] = H[j, i] = v
    return H


def central_hessian_complex(
    F: Callable[[np.ndarray], float], p, h: Optional[float] = None
) -> np.ndarray:
    """Matrix of d^2 F / dz_a dzbar_b for a real function of complex variables.

    Built from the real Hessian in (Re z, Im z):
    1/4 (F_xaxb + F_yayb) + i/4 (F_xayb - F_yaxb).
    """
    p = np.asarray(p, dtype=complex)
    if h is None:
        h = default_step(p)
    if h <= 0 or h < 1e3 * EPS * float(np.linalg.norm(p)):
        raise StepTooSmall(f"step {h!r} is below 1e3*eps*|p|")
    n = p.size

    def G(v: np.ndarray) -> float:
        return float(F(v[:n] + 1j * v[n:]))

    R = real_hessian(G, np.concatenate([p.real, p.imag]), h)
    xx, yy = R[:n, :n], R[n:, n:]
    xy = R[:n, n:]
    return 0.25 * (xx + yy) + 0.25j * (xy - xy.T)
