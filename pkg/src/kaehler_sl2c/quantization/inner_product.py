"""Monte-Carlo inner products <phi1, phi2> = int phi1 conj(phi2) e^{-f/2 hbar} eps.

Points are drawn as chi(U, lambda) with U Haar on SU(2), the direction of
lambda uniform on the sphere and y = arccosh(1 + 2|lambda|^2) uniform on
[0, r_cut]; each sample carries the corresponding density weight.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..global_geom import MC_SHARD_SIZE, volume_density
from ..profiles.core import MetricProfile
from ..sl2c import chi, haar_sample
from .cutoff import degree_log_integrand
from .poly import Poly4

TRUNCATION_NATS = 40.0


def truncation_radius(p: MetricProfile, hbar: float, degree: int = 0, y_max: float = 400.0) -> float:
    """First y past the peak where the log weight of a degree-``degree`` pair
    has fallen TRUNCATION_NATS below its maximum."""
    ys = np.linspace(1e-6, y_max, 40001)
    logs = degree_log_integrand(p, hbar, 0)(ys) + 0.5 * degree * np.log(2.0 * np.cosh(np.minimum(ys, 700.0)))
    peak = int(np.argmax(logs))
    below = np.nonzero(logs[peak:] < logs[peak] - TRUNCATION_NATS)[0]
    if below.size == 0:
        return float(y_max)
    return float(ys[peak + below[0]])


def _sample_points(rng: np.random.Generator, n: int, r_cut: float):
    y = rng.uniform(0.0, r_cut, n)
    lam = np.sqrt((np.cosh(y) - 1.0) / 2.0)
    direction = rng.normal(size=(n, 3))
    direction /= np.linalg.norm(direction, axis=1, keepdims=True)
    m = chi(haar_sample(rng, n), lam[:, None] * direction)
    return y, lam, m


def _weights(p: MetricProfile, hbar: float, y, lam, r_cut: float) -> np.ndarray:
    # 16 pi^2 (Haar) * 4 pi lambda^2 d lambda/dy (sphere, radial change of variable)
    # * r_cut (uniform y) * mu_hat * e^{-f/2 hbar} / (2 pi hbar)^3
    with np.errstate(over="ignore", under="ignore"):
        dens = volume_density(p, lam)
        jac = 16.0 * math.pi ** 2 * math.pi * lam * np.sinh(y) * r_cut
        return jac * dens * np.exp(-p.f(y) / (2.0 * hbar)) / (2.0 * math.pi * hbar) ** 3


@dataclass(frozen=True)
class MCEstimate:
    value: complex
    stderr_real: float
    stderr_imag: float

    def within(self, target: complex, k: float = 3.0) -> bool:
        return (
            abs(self.value.real - target.real) <= k * self.stderr_real
            and abs(self.value.imag - target.imag) <= k * self.stderr_imag
        )


def _run_shards(n: int, seed: int, workers: int, job):
    sizes = [MC_SHARD_SIZE] * (n // MC_SHARD_SIZE)
    if n % MC_SHARD_SIZE:
        sizes.append(n % MC_SHARD_SIZE)
    seqs = np.random.SeedSequence(seed).spawn(len(sizes))
    pairs = list(zip(sizes, seqs))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda a: job(*a), pairs))
    return [job(*a) for a in pairs]


def _combine(parts: list, n: int) -> list[MCEstimate]:
    """parts: per shard, an array (k, 4) of sums of (re, im, re^2, im^2)."""
    total = np.sum(np.stack(parts), axis=0)
    out = []
    for s_re, s_im, q_re, q_im in total:
        mean_re, mean_im = s_re / n, s_im / n
        var_re = max(q_re / n - mean_re ** 2, 0.0) * n / max(n - 1, 1)
        var_im = max(q_im / n - mean_im ** 2, 0.0) * n / max(n - 1, 1)
        out.append(MCEstimate(complex(mean_re, mean_im), math.sqrt(var_re / n), math.sqrt(var_im / n)))
    return out


def _moments(samples: np.ndarray) -> np.ndarray:
    return np.array([samples.real.sum(), samples.imag.sum(),
                     (samples.real ** 2).sum(), (samples.imag ** 2).sum()])


def monte_carlo_inner_products(
    p: MetricProfile,
    hbar: float,
    pairs: Sequence[tuple[Poly4, Poly4]],
    n: int,
    seed: int = 0,
    r_cut: Optional[float] = None,
    workers: int = 1,
) -> list[MCEstimate]:
    """Estimates of <phi1, phi2> for each pair, all from one shared sample."""
    if r_cut is None:
        degree = max(a.degree + b.degree for a, b in pairs)
        r_cut = truncation_radius(p, hbar, max(degree, 0))

    def job(size, seq):
        rng = np.random.default_rng(seq)
        y, lam, m = _sample_points(rng, size, r_cut)
        w = _weights(p, hbar, y, lam, r_cut)
        return np.stack([_moments(w * a.evaluate_matrix(m) * np.conj(b.evaluate_matrix(m))) for a, b in pairs])

    return _combine(_run_shards(n, seed, workers, job), n)


def monte_carlo_inner_product(
    p: MetricProfile,
    hbar: float,
    phi1: Poly4,
    phi2: Poly4,
    r_cut: Optional[float] = None,
    n: int = 10 ** 6,
    seed: int = 0,
    workers: int = 1,
) -> tuple[complex, tuple[float, float]]:
    """<phi1, phi2> with (real, imaginary) standard errors."""
    est = monte_carlo_inner_products(p, hbar, [(phi1, phi2)], n, seed, r_cut, workers)[0]
    return est.value, (est.stderr_real, est.stderr_imag)


def gram_hermiticity(
    p: MetricProfile,
    hbar: float,
    basis: Sequence[Poly4],
    X: tuple,
    n: int,
    seed: int = 0,
    r_cut: Optional[float] = None,
    workers: int = 1,
) -> float:
    """Largest |<A phi_i, phi_j> - <phi_i, A phi_j>| in units of its standard error,
    A being the quantum operator of X.  Both sides use the same sample points."""
    from .poly import quantum_operator

    images = [quantum_operator(X, b, hbar) for b in basis]
    if r_cut is None:
        degree = 2 * max(b.degree for b in basis)
        r_cut = truncation_radius(p, hbar, max(degree, 0))

    def job(size, seq):
        rng = np.random.default_rng(seq)
        y, lam, m = _sample_points(rng, size, r_cut)
        w = _weights(p, hbar, y, lam, r_cut)
        vals = [b.evaluate_matrix(m) for b in basis]
        avals = [a.evaluate_matrix(m) for a in images]
        rows = []
        # D_ji = -conj(D_ij), so the upper triangle carries all the information.
        for i in range(len(basis)):
            for j in range(i, len(basis)):
                diff = w * (avals[i] * np.conj(vals[j]) - vals[i] * np.conj(avals[j]))
                rows.append(_moments(diff))
        return np.stack(rows)

    worst = 0.0
    for est in _combine(_run_shards(n, seed, workers, job), n):
        for part, err in ((est.value.real, est.stderr_real), (est.value.imag, est.stderr_imag)):
            if err > 0:
                worst = max(worst, abs(part) / err)
            elif part != 0:
                return math.inf
    return worst
