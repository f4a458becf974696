from __future__ import annotations

import math

import numpy as np
import pytest

from kaehler_sl2c import curvature as cv
from kaehler_sl2c.errors import InadmissibleProfile
from kaehler_sl2c.numerics import central_hessian_complex
from kaehler_sl2c.profiles import ExprProfile, builtin


def test_diagonal_point():
    assert cv.DiagonalPoint(1.0).y == 0.0
    assert cv.DiagonalPoint.at_y(2.0, 0.4).y == pytest.approx(2.0)
    with pytest.raises(ValueError):
        cv.DiagonalPoint(0.0)


def test_quadratic_metric_at_identity():
    h = cv.metric_at(builtin("quadratic"), cv.DiagonalPoint(1.0))
    assert tuple(h) == pytest.approx((2.0, 1.0, 1.0))
    assert h.positive_definite


def test_cosh_transverse_metric_is_constant():
    for y in (0.5, 2.0, 7.0):
        assert cv.metric_at(builtin("cosh"), cv.DiagonalPoint.at_y(y)).h22 == pytest.approx(0.5)


@pytest.mark.parametrize("y", [0.2, 1.0, 2.0, 3.0])
def test_metric_matches_hessian_oracle(any_builtin, y):
    pt = cv.DiagonalPoint.at_y(y, phase=0.8)
    H = central_hessian_complex(cv.potential_on_chart(any_builtin), pt.chart_coords)
    want = cv.metric_at(any_builtin, pt).as_matrix()
    assert np.max(np.abs(H - want)) <= 1e-6 * np.max(np.abs(want))


def test_chart_metric_off_the_slice_matches_oracle(rng):
    p = builtin("lump")
    z = np.array([1.5 + 0.3j, 0.4 - 0.2j, -0.3 + 0.5j])
    H = central_hessian_complex(cv.potential_on_chart(p), z)
    np.testing.assert_allclose(cv.chart_metric(p, z), H, atol=1e-6 * np.abs(H).max())


def test_metric_scales_linearly():
    p = builtin("lump")
    pt = cv.DiagonalPoint.at_y(1.2)
    a, b = cv.metric_at(p, pt), cv.metric_at(p.scaled(2.0), pt)
    assert tuple(b) == pytest.approx(tuple(2 * v for v in a), rel=1e-15)


def test_ricci_is_scale_invariant():
    p = builtin("lump")
    pt = cv.DiagonalPoint.at_y(1.2)
    assert tuple(cv.ricci_components(p.scaled(2.0), pt)) == pytest.approx(tuple(cv.ricci_components(p, pt)), rel=1e-12)


@pytest.mark.parametrize("y", [0.3, 1.0, 2.5])
def test_ricci_matches_log_det_oracle(y):
    p = builtin("lump")
    pt = cv.DiagonalPoint.at_y(y, phase=1.1)
    R = -2.0 * central_hessian_complex(cv.log_det_chart_metric(p), pt.chart_coords)
    want = cv.ricci_components(p, pt).as_matrix()
    assert np.max(np.abs(R - want)) <= 1e-4 * np.max(np.abs(want))


def test_ricci_potential_generates_ricci_form():
    # rho = (i/2) d dbar rho~, so the Hessian of rho~ o y gives the Ricci components.
    p = builtin("quadratic")
    pt = cv.DiagonalPoint.at_y(1.4, 0.2)

    def potential(z):
        from kaehler_sl2c.sl2c import chart_inverse, y_of

        return cv.ricci_potential(p, float(y_of(chart_inverse(*z))))

    H = central_hessian_complex(potential, pt.chart_coords)
    np.testing.assert_allclose(H, cv.ricci_components(p, pt).as_matrix(), atol=1e-5)


def test_ricci_potential_quadratic_value():
    want = -2 * math.log((2 / math.sinh(1.0)) ** 2 * 2)
    assert cv.ricci_potential(builtin("quadratic"), 1.0) == pytest.approx(want)


def test_lump_ricci_potential_matches_closed_form_derivative():
    p = builtin("lump")

    def closed(y):
        return -2 * math.log((y * math.cosh(y) - math.sinh(y)) * (math.sinh(2 * y) - 2 * y) ** 2 / math.sinh(y) ** 9)

    h = 1e-5
    for y in (0.5, 1.5, 3.0):
        d_ours = (cv.ricci_potential(p, y + h) - cv.ricci_potential(p, y - h)) / (2 * h)
        d_closed = (closed(y + h) - closed(y - h)) / (2 * h)
        assert d_ours == pytest.approx(d_closed, rel=1e-6)


def test_stenzel_is_ricci_flat():
    p = builtin("stenzel")
    for y in np.linspace(0.2, 5.0, 13):
        assert abs(cv.scalar_curvature(p, float(y))) <= 1e-6
        r = cv.ricci_components(p, cv.DiagonalPoint.at_y(float(y)))
        assert max(abs(v) for v in r) <= 1e-8


def test_stenzel_potential_is_pluriharmonic():
    p = builtin("stenzel")

    def potential(z):
        from kaehler_sl2c.sl2c import chart_inverse, y_of

        return cv.ricci_potential(p, float(y_of(chart_inverse(*z))))

    H = central_hessian_complex(potential, cv.DiagonalPoint.at_y(1.0).chart_coords)
    assert np.max(np.abs(H)) <= 1e-6


def test_lump_scalar_curvature_positive_increasing():
    p = builtin("lump")
    s = [cv.scalar_curvature(p, float(y)) for y in np.linspace(0.2, 5.0, 25)]
    assert all(v > 0 for v in s)
    assert all(b > a for a, b in zip(s, s[1:]))
    assert cv.scalar_curvature(p, 12.0) > 3 * s[-1]


def test_scalar_curvature_two_forms_agree():
    p = builtin("quadratic")
    y = 1.0
    h = cv.metric_at(p, cv.DiagonalPoint.at_y(y))
    r = cv.ricci_components(p, cv.DiagonalPoint.at_y(y))
    trace = r.h11 / h.h11 + 2 * r.h22 / h.h22
    assert cv.scalar_curvature(p, y) == pytest.approx(trace, rel=1e-12)


def test_scalar_curvature_regular_at_origin(any_builtin):
    s0, err = cv.scalar_curvature(any_builtin, 0.0, with_error=True)
    assert math.isfinite(s0)
    s15, s20 = cv.scalar_curvature(any_builtin, 0.15), cv.scalar_curvature(any_builtin, 0.2)
    assert abs(s15 - s20) <= 10 * max(err, 1e-12) + abs(s20 - s0)


def test_quadratic_curvature_at_origin():
    # y^2 gives s(0) = 2 in these units
    assert cv.scalar_curvature(builtin("quadratic"), 0.0) == pytest.approx(2.0, abs=1e-5)


@pytest.mark.parametrize("name, cls", [
    ("stenzel", cv.RicciClass.FLAT),
    ("lump", cv.RicciClass.POSITIVE_DEFINITE),
    ("quadratic", cv.RicciClass.POSITIVE_DEFINITE),
    ("cosh", cv.RicciClass.NEGATIVE_DEFINITE),
])
def test_classify_ricci(name, cls):
    assert cv.classify_ricci(builtin(name)) is cls


def test_inadmissible_point_raises():
    with pytest.raises(InadmissibleProfile):
        cv.metric_at(ExprProfile("-y^2"), cv.DiagonalPoint.at_y(1.0))


def test_fprime_over_sinh_continuity(any_builtin):
    a = cv.fprime_over_sinh(any_builtin, 0.99e-4)
    b = cv.fprime_over_sinh(any_builtin, 1.01e-4)
    assert a == pytest.approx(b, rel=1e-7)
    assert cv.fprime_over_sinh(any_builtin, 0.0) == pytest.approx(any_builtin.f2(0.0))


def test_curve_csv():
    text = cv.curve_csv(builtin("lump"), [0.0, 1.0])
    lines = text.strip().splitlines()
    assert lines[0] == "y,s,rho_potential,h11,h22,r11,r22"
    assert len(lines) == 3
