from __future__ import annotations

import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from kaehler_sl2c.errors import JetDomainError
from kaehler_sl2c.numerics import Jet4, jcosh, jcoth, jexp, jlog, jpow, jsinh, jsqrt, jtanh

Y = sp.Symbol("y")


def sympy_derivs(expr, y0):
    return [float(sp.diff(expr, Y, k).subs(Y, y0)) for k in range(5)]


CASES = [
    (lambda u: jexp(u * 2.0), sp.exp(2 * Y)),
    (lambda u: jsinh(u) * jcosh(u), sp.sinh(Y) * sp.cosh(Y)),
    (lambda u: jtanh(u), sp.tanh(Y)),
    (lambda u: jcoth(u), sp.coth(Y)),
    (lambda u: jlog(u * u + 1.0), sp.log(Y ** 2 + 1)),
    (lambda u: jpow(u, 1.0 / 3.0), Y ** sp.Rational(1, 3)),
    (lambda u: jsqrt(jcosh(u)), sp.sqrt(sp.cosh(Y))),
    (lambda u: 1.0 / (u + 2.0), 1 / (Y + 2)),
    (lambda u: u ** 3 - u / 4.0, Y ** 3 - Y / 4),
]


@pytest.mark.parametrize("build, expr", CASES)
@pytest.mark.parametrize("y0", [0.3, 1.7])
def test_jet_derivatives_match_sympy(build, expr, y0):
    got = build(Jet4.variable(y0)).derivatives()
    want = sympy_derivs(expr, y0)
    np.testing.assert_allclose(got, want, rtol=1e-11, atol=1e-11)


def test_jets_broadcast_over_arrays():
    ys = np.array([0.5, 1.0, 2.0])
    got = jexp(Jet4.variable(ys)).derivatives()
    for d in got:
        np.testing.assert_allclose(d, np.exp(ys))


def test_integer_power_accepts_negative_base():
    d = jpow(Jet4.variable(-2.0), 3).derivatives()
    assert d[:4] == pytest.approx([-8.0, 12.0, -12.0, 6.0])


@pytest.mark.parametrize("bad", [
    lambda u: jlog(u - 5.0),
    lambda u: 1.0 / (u - 1.0),
    lambda u: jpow(u - 5.0, 0.5),
    lambda u: jsqrt(u * 0.0),
])
def test_domain_errors(bad):
    with pytest.raises(JetDomainError):
        bad(Jet4.variable(1.0))


@settings(max_examples=60, deadline=None)
@given(st.floats(0.1, 3.0), st.floats(-2.0, 2.0), st.floats(-2.0, 2.0))
def test_product_rule(y0, a, b):
    u = Jet4.variable(y0)
    f, g = jsinh(u * a), jcosh(u * b) + 2.0
    prod = (f * g).derivatives()
    fd, gd = f.derivatives(), g.derivatives()
    for k in range(5):
        leibniz = sum(math.comb(k, j) * fd[j] * gd[k - j] for j in range(k + 1))
        assert prod[k] == pytest.approx(leibniz, rel=1e-10, abs=1e-10)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.2, 5.0))
def test_exp_log_inverse(y0):
    u = Jet4.variable(y0)
    back = jexp(jlog(u)).derivatives()
    assert back == pytest.approx((y0, 1.0, 0.0, 0.0, 0.0), abs=1e-11)
