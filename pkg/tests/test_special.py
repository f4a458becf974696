from __future__ import annotations

import numpy as np
import pytest
import sympy as sp

from kaehler_sl2c.numerics.special import SERIES_CUTOFF, log_ycoth_second, ycoth_derivatives

Y = sp.Symbol("y")
YCOTH = Y * sp.coth(Y)


@pytest.mark.parametrize("y0", [0.02, 0.099, 0.101, 0.5, 3.0, 12.0])
def test_matches_symbolic_derivatives(y0):
    want = [float(sp.N(sp.diff(YCOTH, Y, k).subs(Y, sp.Rational(str(y0))), 30)) for k in range(5)]
    got = ycoth_derivatives(y0)
    np.testing.assert_allclose(got, want, rtol=1e-9, atol=1e-12)


def test_continuous_across_series_cutoff():
    lo = ycoth_derivatives(SERIES_CUTOFF * (1 - 1e-9))
    hi = ycoth_derivatives(SERIES_CUTOFF * (1 + 1e-9))
    np.testing.assert_allclose(lo, hi, rtol=1e-8, atol=1e-10)


def test_value_at_origin():
    assert ycoth_derivatives(0.0) == pytest.approx((1.0, 0.0, 2.0 / 3.0, 0.0, -8.0 / 15.0))


def test_far_tail_is_finite():
    d = ycoth_derivatives(np.array([400.0, 800.0]))
    assert np.all(np.isfinite(np.concatenate(d)))


def test_log_second_derivative_agrees_where_both_work():
    ys = np.array([0.5, 2.0, 10.0, 50.0])
    np.testing.assert_allclose(log_ycoth_second(ys), np.log(ycoth_derivatives(ys)[2]), rtol=1e-10)
    assert np.isfinite(log_ycoth_second(600.0))
