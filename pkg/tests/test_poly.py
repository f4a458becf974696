from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kaehler_sl2c.errors import NotHomogeneous
from kaehler_sl2c.quantization import (
    DEFINING,
    QUADRIC,
    Poly4,
    basis_H_poly,
    dim_H_poly,
    is_quadric_divisible,
    monomials,
    quantum_operator,
    reduce_mod_ideal,
    reduction_rank,
    symbolic_field,
    z,
)
from kaehler_sl2c.sl2c import TAU, chart_inverse

exponents = st.tuples(*[st.integers(0, 3)] * 4)
coefficients = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)
polys = st.dictionaries(exponents, coefficients, max_size=5).map(Poly4.from_dict)


def sl2_points(rng, count):
    out = []
    for _ in range(count):
        zs = rng.normal(size=3) + 1j * rng.normal(size=3)
        out.append(chart_inverse(*zs))
    return out


def test_zero_polynomial():
    zero = Poly4()
    assert zero.is_zero
    assert zero.degree == -1
    assert zero.to_text() == "0"
    assert Poly4.parse("0").is_zero


def test_degree_and_homogeneity():
    p = z(1) * z(4) + z(2)
    assert p.degree == 2
    assert not p.is_homogeneous
    assert p.top_part() == z(1) * z(4)
    assert QUADRIC.is_homogeneous


def test_defining_polynomial_vanishes_on_sl2(rng):
    for m in sl2_points(rng, 10):
        assert abs(DEFINING.evaluate_matrix(m)) < 1e-12


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_evaluation_is_an_algebra_map(p, q):
    point = (0.3 + 0.2j, -0.7j, 1.1, 0.4 - 0.5j)
    assert complex((p + q)(*point)) == pytest.approx(complex(p(*point) + q(*point)), abs=1e-9)
    assert complex((p * q)(*point)) == pytest.approx(complex(p(*point) * q(*point)), rel=1e-9, abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(polys)
def test_text_round_trip(p):
    assert Poly4.parse(p.to_text()).is_close(p, tol=1e-14)


@settings(max_examples=40, deadline=None)
@given(polys)
def test_reduction_preserves_values_on_sl2(p):
    rng = np.random.default_rng(5)
    reduced = reduce_mod_ideal(p)
    for m in sl2_points(rng, 3):
        a, b = complex(p.evaluate_matrix(m)), complex(reduced.evaluate_matrix(m))
        assert b == pytest.approx(a, rel=1e-8, abs=1e-8)
    for e, _ in reduced.terms:
        assert min(e[0], e[3]) == 0


def test_reduction_examples():
    assert reduce_mod_ideal(z(1) * z(4)) == z(2) * z(3) + 1
    assert reduce_mod_ideal(DEFINING).is_zero


def test_quadric_division():
    q = z(1) * z(2) + z(3) ** 2
    ok, quotient = is_quadric_divisible(QUADRIC * q)
    assert ok and quotient.is_close(q)
    assert is_quadric_divisible(z(1) ** 2)[0] is False
    with pytest.raises(NotHomogeneous):
        is_quadric_divisible(z(1) + 1)


@pytest.mark.parametrize("m", range(0, 7))
def test_reduction_rank_matches_dimension(m):
    assert reduction_rank(m) == dim_H_poly(m)
    assert len(basis_H_poly(m)) == dim_H_poly(m)


def test_monomial_count():
    assert len(monomials(3)) == 20
    assert monomials(1) == [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]


def _algebra(rng):
    return 0.5j * np.einsum("a,aij->ij", rng.normal(size=3), TAU)


def test_symbolic_field_matches_matrix_field(rng):
    X = (_algebra(rng), _algebra(rng))
    field = symbolic_field(X)
    m = sl2_points(rng, 1)[0]
    want = (X[0] @ m - m @ X[1]).reshape(-1)
    got = [complex(f.evaluate_matrix(m)) for f in field]
    np.testing.assert_allclose(got, want, atol=1e-12)


def test_quantum_operator_preserves_degree(rng):
    X = (_algebra(rng), _algebra(rng))
    for m in range(4):
        for phi in basis_H_poly(m):
            out = quantum_operator(X, phi, 0.3)
            assert out.degree <= m


def test_quantum_operator_is_derivation_times_i_hbar(rng):
    X = (_algebra(rng), _algebra(rng))
    hbar = 0.7
    p, q = z(1) + 2 * z(3), z(2) * z(4)
    lhs = quantum_operator(X, p * q, hbar)
    rhs = reduce_mod_ideal(quantum_operator(X, p, hbar) * q + p * quantum_operator(X, q, hbar))
    assert lhs.is_close(rhs, tol=1e-12)
    assert quantum_operator(X, Poly4.constant(3.0), hbar).is_zero
    with pytest.raises(ValueError):
        quantum_operator(X, p, 0.0)
