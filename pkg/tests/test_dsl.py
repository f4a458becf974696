from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kaehler_sl2c.errors import ProfileSyntaxError, UnknownIdentifier
from kaehler_sl2c.numerics import Jet4
from kaehler_sl2c.profiles.dsl import (
    FUNCTIONS,
    BinOp,
    Call,
    Neg,
    Num,
    Pi,
    Var,
    YCoth,
    depends_on_y,
    evaluate,
    evaluate_constant,
    parse_profile,
    to_text,
)


def test_unary_minus_binds_looser_than_power():
    assert parse_profile("-y^2") == Neg(BinOp("^", Var(), Num(2.0)))


def test_power_is_right_associative():
    assert parse_profile("y^2^3") == BinOp("^", Var(), BinOp("^", Num(2.0), Num(3.0)))


def test_arithmetic_precedence():
    assert evaluate(parse_profile("1 + 2 * 3 - 4 / 2"), 0.0) == 5.0
    assert evaluate(parse_profile("(1 + 2) * 3"), 0.0) == 9.0


def test_functions_and_constants():
    node = parse_profile("pi * ycoth + cosh(y) - exp(-y)")
    y = 0.7
    want = math.pi * y / math.tanh(y) + math.cosh(y) - math.exp(-y)
    assert evaluate(node, y) == pytest.approx(want)


def test_function_applied_to_atom():
    # "cosh y" applies cosh to the atom y, as "cosh(y)" does
    assert parse_profile("cosh y") == parse_profile("cosh(y)")


@pytest.mark.parametrize("text, offset", [
    ("y +", 3),
    ("y ^^ 2", 3),
    ("(y + 1", 6),
    ("y $ 2", 2),
    ("2 3", 2),
])
def test_syntax_errors_report_offsets(text, offset):
    with pytest.raises(ProfileSyntaxError) as info:
        parse_profile(text)
    assert info.value.offset == offset


def test_offsets_are_bytes():
    with pytest.raises(ProfileSyntaxError) as info:
        parse_profile("é $")
    assert info.value.offset in (0, 3)


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifier) as info:
        parse_profile("2 * foo")
    assert info.value.offset == 4


def test_empty_expression():
    with pytest.raises(ProfileSyntaxError):
        parse_profile("   ")


def test_evaluate_constant():
    assert evaluate_constant("pi/200") == pytest.approx(math.pi / 200)
    with pytest.raises(ProfileSyntaxError):
        evaluate_constant("y + 1")


def test_jet_evaluation_of_ycoth_at_origin():
    d = evaluate(parse_profile("pi*ycoth"), Jet4.variable(0.0)).derivatives()
    assert d[0] == pytest.approx(math.pi)
    assert d[2] == pytest.approx(2 * math.pi / 3)


def test_depends_on_y():
    assert not depends_on_y(parse_profile("pi * 2"))
    assert depends_on_y(parse_profile("exp(ycoth)"))


leaves = st.one_of(
    st.floats(0, 1e6, allow_nan=False, allow_infinity=False).map(Num),
    st.just(Pi()),
    st.just(Var()),
    st.just(YCoth()),
)
trees = st.recursive(
    leaves,
    lambda kids: st.one_of(
        kids.map(Neg),
        st.tuples(st.sampled_from("+-*/^"), kids, kids).map(lambda t: BinOp(*t)),
        st.tuples(st.sampled_from(FUNCTIONS), kids).map(lambda t: Call(*t)),
    ),
    max_leaves=12,
)


@settings(max_examples=300, deadline=None)
@given(trees)
def test_print_parse_round_trip(tree):
    assert parse_profile(to_text(tree)) == tree


@settings(max_examples=100, deadline=None)
@given(trees)
def test_canonical_text_is_a_fixed_point(tree):
    text = to_text(tree)
    assert to_text(parse_profile(text)) == text


def test_array_evaluation():
    ys = np.linspace(0.0, 2.0, 5)
    np.testing.assert_allclose(evaluate(parse_profile("y^2 + 1"), ys), ys ** 2 + 1)
