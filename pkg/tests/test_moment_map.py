from __future__ import annotations

import numpy as np
import pytest

from kaehler_sl2c import moment_map as mm
from kaehler_sl2c.curvature import chart_metric
from kaehler_sl2c.profiles import builtin
from kaehler_sl2c.sl2c import TAU, act, chart, chart_inverse, chi, haar_sample, y_of


def algebra(rng):
    return 0.5j * np.einsum("a,aij->ij", rng.normal(size=3), TAU)


def point(rng, spread=1.0):
    return chi(haar_sample(rng), spread * rng.normal(size=3))


def expm(a, t):
    w, v = np.linalg.eig(a)
    return v @ np.diag(np.exp(t * w)) @ np.linalg.inv(v)


def test_fundamental_field_examples(rng):
    zero = np.zeros((2, 2))
    m = point(rng)
    np.testing.assert_allclose(mm.fundamental_field((zero, zero), m), 0)
    np.testing.assert_allclose(mm.fundamental_field((0.5j * TAU[2], zero), np.eye(2)), 0.5j * TAU[2])


def test_fundamental_field_against_exponential(rng):
    a, b, m = algebra(rng), algebra(rng), point(rng)
    t = 1e-6
    fd = (expm(a, t) @ m @ expm(b, -t) - m) / t
    np.testing.assert_allclose(mm.fundamental_field((a, b), m), fd, atol=1e-5)


def test_moment_vanishes_on_su2(rng, lump):
    assert mm.moment(lump, haar_sample(rng), (algebra(rng), algebra(rng))) == pytest.approx(0.0, abs=1e-12)
    assert mm.moment_norm_sq(lump, haar_sample(rng)) == pytest.approx(0.0, abs=1e-12)


def test_norm_identity(rng, any_builtin):
    for _ in range(50):
        m = point(rng)
        f1 = float(any_builtin.f1(float(y_of(m))))
        value = mm.moment_value(any_builtin, m)
        assert value.norm_sq() == pytest.approx(f1 ** 2 / 4, rel=1e-10, abs=1e-12)
        assert mm.moment_norm_sq(any_builtin, m) == pytest.approx(f1 ** 2 / 4)


def test_quadratic_norm_at_y3():
    m = np.diag([np.exp(1.5), np.exp(-1.5)])
    assert mm.moment_norm_sq(builtin("quadratic"), m) == pytest.approx(9.0)


def test_value_pairing_matches_moment(rng, lump):
    m, X = point(rng), (algebra(rng), algebra(rng))
    assert mm.moment_value(lump, m).evaluate(X) == pytest.approx(mm.moment(lump, m, X), rel=1e-12)


def test_equivariance(rng, lump):
    for _ in range(100):
        m, X = point(rng), (algebra(rng), algebra(rng))
        g = (haar_sample(rng), haar_sample(rng))
        lhs = mm.moment(lump, act(g, m), X)
        rhs = mm.moment(lump, m, (g[0].conj().T @ X[0] @ g[0], g[1].conj().T @ X[1] @ g[1]))
        assert lhs == pytest.approx(rhs, abs=1e-10)


def test_bilinearity(rng, lump):
    m = point(rng)
    X, Y = (algebra(rng), algebra(rng)), (algebra(rng), algebra(rng))
    S = (X[0] + Y[0], X[1] + Y[1])
    assert mm.moment(lump, m, S) == pytest.approx(mm.moment(lump, m, X) + mm.moment(lump, m, Y), abs=1e-13)


def test_differential_is_contraction_of_omega(rng, lump):
    eps = 1e-6
    for _ in range(5):
        z = rng.normal(size=3) + 1j * rng.normal(size=3)
        z[0] += 2.0
        X = (algebra(rng), algebra(rng))
        v = rng.normal(size=3) + 1j * rng.normal(size=3)
        d = (mm.moment(lump, chart_inverse(*(z + eps * v)), X) - mm.moment(lump, chart_inverse(*(z - eps * v)), X)) / (2 * eps)
        pairing = mm.kaehler_pairing(chart_metric(lump, z), mm.chart_field(X, chart_inverse(*z)), v)
        assert d == pytest.approx(pairing, rel=1e-4, abs=1e-8)


def _unit_pair(c):
    # -tr(a^2) = |c|^2 / 2 for a = (i/2) c.tau, so rescale to unit norm
    a = 1j * np.einsum("a,aij->ij", c[:3], TAU) / np.sqrt(2)
    b = 1j * np.einsum("a,aij->ij", c[3:], TAU) / np.sqrt(2)
    return a, b


def test_dual_norm_by_brute_force(rng, lump):
    for _ in range(3):
        m = point(rng, 1.5)
        target = mm.moment_norm_sq(lump, m)
        grad = np.array([mm.moment(lump, m, _unit_pair(e)) for e in np.eye(6)])
        assert grad @ grad == pytest.approx(target, rel=1e-10)
        cs = rng.normal(size=(5000, 6))
        cs /= np.linalg.norm(cs, axis=1, keepdims=True)
        sampled = max(mm.moment(lump, m, _unit_pair(c)) ** 2 for c in cs)
        assert sampled <= target * (1 + 1e-10)
        assert mm.moment(lump, m, _unit_pair(grad / np.linalg.norm(grad))) ** 2 == pytest.approx(target)


def test_component_norms_are_equal(rng, lump):
    left, right = mm.moment_value(lump, point(rng)).component_norms()
    assert left == pytest.approx(right)


def test_image():
    lump = builtin("lump")
    edge = np.pi / (2 * np.sqrt(2))
    assert mm.moment_image_contains(lump, (0.0, 0.0))
    assert mm.moment_image_contains(lump, (edge * 0.999, edge * 0.999))
    assert not mm.moment_image_contains(lump, (edge, edge))
    assert not mm.moment_image_contains(lump, (0.1, 0.2))
    assert mm.moment_image_contains(builtin("cosh"), (1e6, 1e6))
    with pytest.raises(ValueError):
        mm.moment_image_contains(lump, (-1.0, -1.0))


def test_serialization(rng, lump):
    doc = mm.moment_value(lump, point(rng)).to_dict()
    assert set(doc) == {"mu_L", "mu_R"}
    assert len(doc["mu_L"]) == 2
