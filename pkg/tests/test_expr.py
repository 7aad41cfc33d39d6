import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from koszulkit.errors import DomainError, EmptyExpression, SyntaxError as ExprSyntaxError, UnknownSymbol
from koszulkit.expr import diff, eval_jet2, parse_expr, symbols, to_text

NAMES = ["x", "y"]


def fd_grad(f, x, h=1e-6):
    out = np.zeros(len(x))
    for i in range(len(x)):
        e = np.zeros(len(x))
        e[i] = h
        out[i] = (f(x + e) - f(x - e)) / (2 * h)
    return out


def value(text, x, y):
    return eval_jet2(parse_expr(text, NAMES), {"x": x, "y": y}).value


def test_precedence_and_power_associativity():
    assert value("2^3^2", 0, 0) == 2.0 ** 9
    assert value("-x^2", 3, 0) == -9.0
    assert value("1 - 2 - 3", 0, 0) == -4.0
    assert value("8 / 4 / 2", 0, 0) == 1.0
    assert value("2 * (x + y)", 1, 2) == 6.0


def test_functions_and_constants():
    assert value("sin(x)^2 + cos(x)^2", 0.37, 0) == pytest.approx(1.0, abs=1e-15)
    assert value("log(exp(y))", 0, 1.3) == pytest.approx(1.3, abs=1e-15)
    assert value("sqrt(x)", 2.25, 0) == 1.5


def test_jet_matches_hand_derivatives():
    j = eval_jet2(parse_expr("x^2*sin(y)", NAMES), {"x": 0.3, "y": 0.4})
    assert j.value == pytest.approx(0.09 * math.sin(0.4))
    np.testing.assert_allclose(j.grad, [0.6 * math.sin(0.4), 0.09 * math.cos(0.4)])
    np.testing.assert_allclose(j.hess, [[2 * math.sin(0.4), 0.6 * math.cos(0.4)],
                                        [0.6 * math.cos(0.4), -0.09 * math.sin(0.4)]])


def test_symbolic_diff_agrees_with_jet_gradient():
    e = parse_expr("x^2*sin(y) + exp(x*y)/(1+y^2)", NAMES)
    p = {"x": 0.3, "y": -0.4}
    j = eval_jet2(e, p)
    assert eval_jet2(diff(e, "x"), p).value == pytest.approx(j.grad[0], rel=1e-13)
    assert eval_jet2(diff(e, "y"), p).value == pytest.approx(j.grad[1], rel=1e-13)


def test_symbols_and_errors():
    assert symbols(parse_expr("x*3 + sin(y)", NAMES)) == {"x", "y"}
    with pytest.raises(UnknownSymbol):
        parse_expr("x + z", NAMES)
    with pytest.raises(EmptyExpression):
        parse_expr("  ", NAMES)
    with pytest.raises(ExprSyntaxError):
        parse_expr("x + * y", NAMES)
    with pytest.raises(UnknownSymbol):
        parse_expr("tan(x)", NAMES)
    with pytest.raises(DomainError):
        eval_jet2(parse_expr("log(x)", NAMES), {"x": -1.0, "y": 0.0})


def test_to_text_round_trip():
    for text in ["x^2 * sin(y) + exp(x * y) / (1 + y^2)", "-(x - y)^3", "x / (y * 2)", "2^3^2", "(2^3)^2"]:
        e = parse_expr(text, NAMES)
        assert parse_expr(to_text(e), NAMES) == e


_leaf = st.one_of(st.sampled_from(["x", "y"]), st.integers(1, 5).map(str))
_expr = st.recursive(
    _leaf,
    lambda s: st.one_of(
        st.tuples(s, st.sampled_from(["+", "-", "*"]), s).map(lambda t: f"({t[0]} {t[1]} {t[2]})"),
        st.tuples(s, st.integers(1, 3)).map(lambda t: f"({t[0]})^{t[1]}"),
        s.map(lambda a: f"sin({a})"),
        s.map(lambda a: f"exp(({a}) / 10)"),
    ),
    max_leaves=8,
)


@settings(max_examples=60, deadline=None)
@given(_expr, st.floats(-1, 1), st.floats(-1, 1))
def test_jet_gradient_matches_finite_differences(text, x, y):
    e = parse_expr(text, NAMES)
    j = eval_jet2(e, {"x": x, "y": y})
    f = lambda v: eval_jet2(e, {"x": v[0], "y": v[1]}).value
    scale = 1.0 + abs(j.value) + float(np.max(np.abs(j.hess)))
    np.testing.assert_allclose(j.grad, fd_grad(f, np.array([x, y])), atol=1e-5 * scale)
    np.testing.assert_allclose(j.hess, j.hess.T)


@settings(max_examples=60, deadline=None)
@given(_expr, st.floats(-1, 1), st.floats(-1, 1))
def test_printing_preserves_value(text, x, y):
    e = parse_expr(text, NAMES)
    a = eval_jet2(e, {"x": x, "y": y}).value
    b = eval_jet2(parse_expr(to_text(e), NAMES), {"x": x, "y": y}).value
    assert b == pytest.approx(a, rel=1e-12, abs=1e-12)
