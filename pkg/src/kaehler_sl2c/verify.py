"""End-to-end checks of the library against independent numerical oracles.

Each check returns a :class:`CheckResult`; ``run_suite`` groups them into the
``geometry`` and ``quantization`` suites (or ``all``).  ``fast`` shrinks sample
sizes so the whole run stays well under a minute.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import curvature as cv
from . import global_geom as gg
from . import moment_map as mm
from . import quantization as qz
from .numerics import central_hessian_complex
from .profiles import BUILTIN_NAMES, builtin
from .sl2c import TAU, act, beta, beta_section, cartan_decompose, chart, chart_inverse, chi, haar_sample, same_orbit


@dataclass(frozen=True)
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.2f}s)"


def _random_su2_algebra(rng: np.random.Generator) -> np.ndarray:
    return 0.5j * np.einsum("a,aij->ij", rng.normal(size=3), TAU)


def _random_point(rng: np.random.Generator, spread: float = 1.0) -> np.ndarray:
    return chi(haar_sample(rng), spread * rng.normal(size=3))


def _rel(a, b) -> float:
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b)) / max(float(np.max(np.abs(b))), 1e-300))


# -- geometry ---------------------------------------------------------------


def check_lump_volume(fast: bool, seed: int) -> tuple[bool, str]:
    p = builtin("lump")
    t0 = time.perf_counter()
    omega = gg.total_volume(p)
    closed = math.pi ** 6 / 3
    err_closed = abs(omega - closed) / closed
    err_quad = abs(gg.integrate_invariant(p, lambda y: 1.0, 40.0) - closed) / closed
    err_quot = abs(gg.total_volume(p, quotient=True) - math.pi ** 6 / 6) / (math.pi ** 6 / 6)
    elapsed = time.perf_counter() - t0
    ok = err_closed <= 1e-10 and err_quad <= 1e-6 and err_quot <= 1e-10 and elapsed < 1.0
    return ok, f"closed {err_closed:.1e}, quadrature {err_quad:.1e}, quotient {err_quot:.1e}, under 1s {elapsed < 1.0}"


def check_monte_carlo_volume(fast: bool, seed: int) -> tuple[bool, str]:
    n = 200_000 if fast else 1_000_000
    t0 = time.perf_counter()
    worst_sigma, worst_rel, ok = 0.0, 0.0, True
    for k, name in enumerate(("lump", "quadratic")):
        p = builtin(name)
        for j, r in enumerate((0.5, 1.0)):
            est, se = gg.monte_carlo_volume(p, r, n, seed=seed + 10 * k + j)
            exact = gg.volume_Mr(p, r)
            sigma, rel = abs(est - exact) / se, se / exact
            worst_sigma, worst_rel = max(worst_sigma, sigma), max(worst_rel, rel)
            ok &= sigma <= 3.0 and rel < 0.01
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 30.0
    return ok, f"n={n}, worst deviation {worst_sigma:.2f} stderr, worst stderr/value {worst_rel:.1e}"


def _diagonal_points(count: int):
    for i, y in enumerate(np.linspace(0.2, 3.0, count)):
        yield cv.DiagonalPoint.at_y(float(y), phase=0.37 * i)


def check_metric_oracle(fast: bool, seed: int) -> tuple[bool, str]:
    t0 = time.perf_counter()
    worst = 0.0
    for name in BUILTIN_NAMES:
        p = builtin(name)
        F = cv.potential_on_chart(p)
        for pt in _diagonal_points(10):
            H = central_hessian_complex(F, pt.chart_coords)
            worst = max(worst, _rel(H, cv.metric_at(p, pt).as_matrix()))
    elapsed = time.perf_counter() - t0
    return worst <= 1e-6 and elapsed < 5.0, f"worst relative error {worst:.1e} over {len(BUILTIN_NAMES)} profiles"


def check_ricci_oracle(fast: bool, seed: int) -> tuple[bool, str]:
    p = builtin("lump")
    G = cv.log_det_chart_metric(p)
    worst = 0.0
    for pt in _diagonal_points(5):
        R = -2.0 * central_hessian_complex(G, pt.chart_coords)
        worst = max(worst, _rel(R, cv.ricci_components(p, pt).as_matrix()))
    return worst <= 1e-4, f"worst relative error {worst:.1e}"


def check_stenzel_flat(fast: bool, seed: int) -> tuple[bool, str]:
    p = builtin("stenzel")
    ys = np.linspace(0.2, 5.0, 49)
    s_max = max(abs(cv.scalar_curvature(p, float(y))) for y in ys)
    r_max = max(
        float(np.max(np.abs(cv.ricci_components(p, cv.DiagonalPoint.at_y(float(y))).as_matrix()))) for y in ys
    )
    return s_max <= 1e-6 and r_max <= 1e-6, f"max |s| {s_max:.1e}, max |Ricci| {r_max:.1e}"


def check_completeness(fast: bool, seed: int) -> tuple[bool, str]:
    expected = {"lump": False, "quadratic": True, "cosh": True, "stenzel": True}
    got = {name: gg.is_complete(builtin(name)) for name in expected}
    q = builtin("quadratic")
    dist_err = max(abs(gg.geodesic_distance(q, 0.0, b) - b) for b in (1.0, 2.0, 5.0))
    ok = got == expected and dist_err <= 1e-9
    return ok, f"verdicts {got}, quadratic distance error {dist_err:.1e}"


def check_moment_map(fast: bool, seed: int) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    p = builtin("lump")
    n = 200 if fast else 1000
    worst_norm = worst_equiv = 0.0
    for _ in range(n):
        m = _random_point(rng)
        f1 = float(p.f1(float(np.arccosh(max(beta(m)[0].real, 1.0)))))
        worst_norm = max(worst_norm, abs(mm.moment_value(p, m).norm_sq() - f1 * f1 / 4) / (1 + f1 * f1))
        X = (_random_su2_algebra(rng), _random_su2_algebra(rng))
        g = (haar_sample(rng), haar_sample(rng))
        lhs = mm.moment(p, act(g, m), X)
        rhs = mm.moment(p, m, (g[0].conj().T @ X[0] @ g[0], g[1].conj().T @ X[1] @ g[1]))
        worst_equiv = max(worst_equiv, abs(lhs - rhs) / (1 + abs(rhs)))
    worst_pair = 0.0
    eps = 1e-6
    for pt in _diagonal_points(5):
        z = pt.chart_coords
        X = (_random_su2_algebra(rng), _random_su2_algebra(rng))
        v = rng.normal(size=3) + 1j * rng.normal(size=3)
        deriv = (mm.moment(p, chart_inverse(*(z + eps * v)), X) - mm.moment(p, chart_inverse(*(z - eps * v)), X)) / (2 * eps)
        pairing = mm.kaehler_pairing(cv.metric_at(p, pt).as_matrix(), mm.chart_field(X, chart_inverse(*z)), v)
        worst_pair = max(worst_pair, abs(deriv - pairing) / max(abs(pairing), 1e-12))
    ok = worst_norm <= 1e-10 and worst_equiv <= 1e-10 and worst_pair <= 1e-4
    return ok, f"norm {worst_norm:.1e}, equivariance {worst_equiv:.1e}, d mu vs omega {worst_pair:.1e}"


def check_cartan(fast: bool, seed: int) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    n = 200 if fast else 1000
    worst = 0.0
    pos = neg = sec = True
    for _ in range(n):
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        worst = max(worst, float(np.max(np.abs(cartan_decompose(m).reconstruct() - m))))
        g = (haar_sample(rng), haar_sample(rng))
        pos &= same_orbit(m, act(g, m))
        x, w = beta(m)
        other = act(g, beta_section(float(x.real) + 0.1 + rng.uniform(), complex(w)))
        neg &= not same_orbit(m, other)
        u = complex(rng.normal(), rng.normal())
        a = abs(u) + rng.exponential()
        xa, wa = beta(beta_section(a, u))
        sec &= abs(xa - a) <= 1e-12 * (1 + a) and abs(wa - u) <= 1e-12 * (1 + abs(u))
    ok = worst <= 1e-12 and pos and neg and sec
    return ok, f"reconstruction {worst:.1e}, same orbit {pos}, x-mismatch rejected {neg}, section {sec}"


# -- quantization -----------------------------------------------------------


def closed_form_lump_m(hbar: float) -> int:
    """max{l in N : l < 2 + pi/(2 hbar)}."""
    bound = 2.0 + math.pi / (2.0 * hbar)
    l = math.ceil(bound) - 1
    return l


LUMP_HBARS = (math.pi / 4, math.pi / 20, math.pi / 80, math.pi / 200)


def check_lump_cutoff(fast: bool, seed: int) -> tuple[bool, str]:
    p = builtin("lump")
    t0 = time.perf_counter()
    k = qz.k_of(p)
    ok = abs(k - 2.0) <= 0.05
    found = []
    for hbar in LUMP_HBARS:
        res = qz.max_degree_m(p, hbar)
        c = math.pi / (2 * hbar) + k
        inside = res.is_finite and c - 1 <= res.m <= c
        ok &= inside and res.m == closed_form_lump_m(hbar)
        found.append(res.m)
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 60.0
    expect = [closed_form_lump_m(h) for h in LUMP_HBARS]
    return ok, f"m = {found} (closed form {expect}), k = {k:.3f}"


def check_semiclassical(fast: bool, seed: int) -> tuple[bool, str]:
    p = builtin("lump")
    r200 = qz.semiclassical_ratio(p, math.pi / 200)
    seq = [qz.semiclassical_ratio(p, math.pi / (2 * 10 ** k)) for k in (1, 2, 3)]
    ok = abs(r200 - 358955 / (1e6 / 3)) <= 1e-3 and abs(r200 - 1.0769) <= 1e-3
    ok &= all(a > b for a, b in zip(seq, seq[1:])) and seq[-1] < 1.01 and seq[-1] > 1.0
    return ok, f"ratio(pi/200) = {r200:.6f}, sequence {[round(v, 6) for v in seq]}"


def _random_poly(rng: np.random.Generator, max_degree: int, terms: int) -> qz.Poly4:
    out = {}
    for _ in range(terms):
        d = int(rng.integers(0, max_degree + 1))
        e = tuple(int(v) for v in rng.multinomial(d, [0.25] * 4))
        out[e] = out.get(e, 0) + complex(int(rng.integers(-5, 6)), int(rng.integers(-5, 6)))
    return qz.Poly4.from_dict(out)


def check_ring_quotient(fast: bool, seed: int) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    ranks_ok = all(qz.reduction_rank(m) == math.comb(m + 4, 4) - math.comb(m + 2, 4) for m in range(2, 6))
    n = 200 if fast else 1000
    idem = mult = True
    for _ in range(n):
        a, b = _random_poly(rng, 4, 6), _random_poly(rng, 4, 6)
        ra, rb = qz.reduce_mod_ideal(a), qz.reduce_mod_ideal(b)
        idem &= qz.reduce_mod_ideal(ra) == ra
        mult &= qz.reduce_mod_ideal(a * b) == qz.reduce_mod_ideal(ra * rb)
    ok = ranks_ok and idem and mult
    return ok, f"ranks {ranks_ok}, idempotent {idem}, multiplicative {mult} on {n} pairs"


def check_operators(fast: bool, seed: int) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    hbar = math.pi / 4
    descends = degree_ok = True
    for _ in range(100):
        X = (_random_su2_algebra(rng), _random_su2_algebra(rng))
        Q = _random_poly(rng, 3, 5)
        image = qz.quantum_operator(X, qz.DEFINING * Q, hbar)
        descends &= image.norm() <= 1e-12 * max(1.0, Q.norm())
        phi = _random_poly(rng, 4, 6)
        degree_ok &= qz.quantum_operator(X, phi, hbar).degree <= phi.degree
    X = (_random_su2_algebra(rng), _random_su2_algebra(rng))
    n = 200_000 if fast else 1_000_000
    sigma = qz.gram_hermiticity(builtin("lump"), hbar, qz.basis_H_poly(1), X, n, seed=seed)
    ok = descends and degree_ok and sigma <= 3.0
    return ok, f"descends {descends}, degree non-increasing {degree_ok}, Gram asymmetry {sigma:.2f} sigma"


def check_flat_tail_regime(fast: bool, seed: int) -> tuple[bool, str]:
    p = builtin("hermite-tail")
    omega = gg.total_volume(p)
    res = qz.max_degree_m(p, 0.1)
    ok = math.isfinite(omega) and res.kind == "infinite"
    return ok, f"volume {omega:.6g}, m {res.kind}"


@dataclass(frozen=True)
class Check:
    number: int
    name: str
    suite: str
    fn: Callable[[bool, int], tuple[bool, str]]


CHECKS = (
    Check(1, "lump volume", "geometry", check_lump_volume),
    Check(2, "Monte-Carlo volume", "geometry", check_monte_carlo_volume),
    Check(3, "metric vs Hessian oracle", "geometry", check_metric_oracle),
    Check(4, "Ricci vs log-det oracle", "geometry", check_ricci_oracle),
    Check(5, "Stenzel Ricci-flat", "geometry", check_stenzel_flat),
    Check(6, "completeness table", "geometry", check_completeness),
    Check(7, "moment map identities", "geometry", check_moment_map),
    Check(8, "lump degree cutoff", "quantization", check_lump_cutoff),
    Check(9, "semiclassical ratio", "quantization", check_semiclassical),
    Check(10, "ring quotient", "quantization", check_ring_quotient),
    Check(11, "quantum operators", "quantization", check_operators),
    Check(12, "orbit decomposition", "geometry", check_cartan),
    Check(13, "finite volume, infinite m", "quantization", check_flat_tail_regime),
)

SUITES = ("geometry", "quantization", "all")


def run_check(check: Check, fast: bool = False, seed: int = 0) -> CheckResult:
    t0 = time.perf_counter()
    try:
        passed, detail = check.fn(fast, seed)
    except Exception as exc:  # a crash is a failed check, reported with its cause
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(check.number, check.name, bool(passed), detail, time.perf_counter() - t0)


def run_suite(suite: str = "all", fast: bool = False, seed: int = 0) -> list[CheckResult]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
    return [run_check(c, fast, seed) for c in CHECKS if suite == "all" or c.suite == suite]
