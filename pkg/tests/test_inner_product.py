from __future__ import annotations

import math

import numpy as np
import pytest

from kaehler_sl2c.global_geom import volume_density
from kaehler_sl2c.numerics import integrate
from kaehler_sl2c.profiles import builtin
from kaehler_sl2c.quantization import (
    DivisibleTopPartWarning,
    Poly4,
    QUADRIC,
    basis_H_poly,
    gram_hermiticity,
    in_H_poly,
    monte_carlo_inner_product,
    monte_carlo_inner_products,
    quantization_report,
    truncation_radius,
    z,
)
from kaehler_sl2c.sl2c import TAU

HBAR = math.pi / 4


def norm_of_one(p, hbar, r):
    # the invariant measure in y: 16 pi^2 * 4 pi lambda^2 dlambda/dy * mu_hat
    def integrand(y):
        lam = math.sqrt((math.cosh(y) - 1) / 2)
        return (16 * math.pi ** 3 * lam * math.sinh(y) * float(volume_density(p, lam))
                * math.exp(-float(p.f(y)) / (2 * hbar)) / (2 * math.pi * hbar) ** 3)

    return integrate(integrand, 1e-12, r, 1e-10).value


def test_norm_of_constant_matches_quadrature():
    p = builtin("lump")
    r = truncation_radius(p, HBAR)
    value, (se_re, se_im) = monte_carlo_inner_product(p, HBAR, Poly4.constant(1), Poly4.constant(1), n=400_000, seed=1)
    want = norm_of_one(p, HBAR, r)
    assert abs(value.real - want) <= 4 * se_re
    assert value.imag == 0.0 and se_im == 0.0


def test_orthogonality_of_weights():
    p = builtin("lump")
    est = monte_carlo_inner_products(p, HBAR, [(z(1), Poly4.constant(1)), (z(2), z(3))], n=300_000, seed=2)
    for e in est:
        assert e.within(0j, k=4.0)


def test_norms_are_nonnegative(rng):
    p = builtin("lump")
    for phi in basis_H_poly(2)[:5]:
        value, _ = monte_carlo_inner_product(p, HBAR, phi, phi, n=20_000, seed=3)
        assert value.real >= 0.0
        assert value.imag == pytest.approx(0.0, abs=1e-12)


def test_worker_count_does_not_change_estimate():
    p = builtin("lump")
    a = monte_carlo_inner_product(p, HBAR, z(1), z(1), n=150_000, seed=4)
    b = monte_carlo_inner_product(p, HBAR, z(1), z(1), n=150_000, seed=4, workers=3)
    assert a == b


def test_truncation_radius_grows_with_degree():
    p = builtin("lump")
    assert truncation_radius(p, HBAR, 4) > truncation_radius(p, HBAR, 0) > 0


def test_operators_are_hermitian_in_monte_carlo():
    rng = np.random.default_rng(11)
    X = tuple(0.5j * np.einsum("a,aij->ij", rng.normal(size=3), TAU) for _ in range(2))
    worst = gram_hermiticity(builtin("lump"), HBAR, basis_H_poly(1), X, n=400_000, seed=0)
    assert worst <= 3.0


def test_membership():
    p = builtin("lump")
    assert in_H_poly(p, HBAR, z(1) ** 3)
    assert not in_H_poly(p, HBAR, z(1) ** 4)
    # (z1 z4)^2 - (z2 z3)^2 reduces to 2 z2 z3 + 1, degree 2
    assert in_H_poly(p, HBAR, (z(1) * z(4)) ** 2 - (z(2) * z(3)) ** 2)
    assert in_H_poly(p, HBAR, Poly4())


def test_reduced_top_part_is_never_divisible():
    import warnings

    from kaehler_sl2c.quantization import is_quadric_divisible, reduce_mod_ideal

    p = builtin("lump")
    for phi in (QUADRIC * z(2), QUADRIC ** 2, QUADRIC * z(1) ** 2 + z(4)):
        rep = reduce_mod_ideal(phi)
        assert not is_quadric_divisible(rep.top_part())[0]
        with warnings.catch_warnings():
            warnings.simplefilter("error", DivisibleTopPartWarning)
            in_H_poly(p, HBAR, phi)


def test_report():
    rep = quantization_report(builtin("lump"), math.pi / 20)
    doc = rep.to_dict()
    assert doc["m"] == 11 and doc["dim_H_poly"] == 650
    assert doc["semiclassical_ratio"] == pytest.approx(1.95)
    cosh = quantization_report(builtin("cosh"), 1.0).to_dict()
    assert cosh["k"] == "not applicable" and cosh["omega"] == "inf"
