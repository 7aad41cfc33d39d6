"""Worked examples per operation, with hand-derived or independently computed values frozen in."""

import math

import numpy as np
import pytest

from koszulkit.connections import (ConnectionSpec, Kind, ProductStructure, ap_koszul, koszul, lower_cov_deriv,
                                   ssm_koszul, ssnm_koszul, validate_structure)
from koszulkit.curvature import ap_riemann, christoffel_riemann, riemann, ssm_riemann, ssnm_riemann
from koszulkit.errors import CaseMismatch, EmptyExpression, SpecMismatch
from koszulkit.expr import Add, Call, Mul, Num, Pow, Sym, eval_jet2, parse_expr
from koszulkit.identities import observations
from koszulkit.manifold import (Chart, CovectorField, ExactInverse, MetricField, PseudoInverse, ScalarField,
                                VectorField, cometric_apply, lie_bracket, metric_eval)
from koszulkit.products import (BASE, MultiplyWarpedSpec, TwistedSpec, build_kasner, build_multiply_warped,
                                build_twisted, factor_riemann, fiber, lift)
from koszulkit.products.catalog import CATALOG, CatalogKey, Obj

XY = Chart(("x", "y"), ((-5, 5), (-5, 5)))
TU = Chart(("t", "u"), ((0, 10), (-5, 5)))
EUCLID = MetricField.diagonal(XY, ["1", "1"])
DX, DY = VectorField.coordinate(XY, "x"), VectorField.coordinate(XY, "y")
DT, DU = VectorField.coordinate(TU, "t"), VectorField.coordinate(TU, "u")
POLAR = MetricField.diagonal(TU, ["1", "t^2"])
EXACT = ExactInverse()


# expressions -----------------------------------------------------------------

def test_parse_trees():
    assert parse_expr("t^2 * (1 + u^2)", ["t", "u"]) == \
        Mul(Pow(Sym("t"), Num(2.0)), Add(Num(1.0), Pow(Sym("u"), Num(2.0))))
    assert parse_expr("sin(x) + cos(x)^2", ["x"]) == \
        Add(Call("sin", Sym("x")), Pow(Call("cos", Sym("x")), Num(2.0)))
    with pytest.raises(EmptyExpression):
        parse_expr("", ["t"])


def test_second_order_jets():
    j = eval_jet2(parse_expr("t^2", ["t"]), {"t": 3.0})
    assert (j.value, j.grad[0], j.hess[0, 0]) == (9.0, 6.0, 2.0)
    j = eval_jet2(parse_expr("sin(x)", ["x"]), {"x": 0.0})
    assert (j.value, j.grad[0], j.hess[0, 0]) == (0.0, 1.0, 0.0)
    j = eval_jet2(parse_expr("t*u", ["t", "u"]), {"t": 2.0, "u": 5.0})
    assert j.value == 10.0 and list(j.grad) == [5.0, 2.0] and j.hess[0, 1] == 1.0


# manifold operations ------------------------------------------------------------

def test_metric_eval_examples():
    g = MetricField.diagonal(TU, ["-1", "t^2"])
    assert metric_eval(EUCLID, DX, DY, (0.3, 0.1)) == 0.0
    assert metric_eval(g, DT, DT, (1.7, 0.0)) == -1.0
    assert metric_eval(g, DU, DU, (2.0, 0.0)) == 4.0


def test_lie_bracket_examples():
    p = (0.7, -0.4)
    assert np.all(lie_bracket(DX, DY).at(p) == 0.0)
    np.testing.assert_array_equal(lie_bracket(VectorField(XY, ("0", "x")), DX).at(p), [0.0, -1.0])
    np.testing.assert_array_equal(lie_bracket(VectorField(XY, ("x", "0")), VectorField(XY, ("0", "x"))).at(p),
                                  [0.0, 0.7])


def test_cometric_examples():
    assert cometric_apply(EUCLID, EXACT, [1, 0], [1, 0], (0, 0)) == 1.0
    assert cometric_apply(POLAR, EXACT, [0, 1], [0, 1], (2.0, 0.0)) == 0.25
    deg = MetricField.diagonal(XY, ["1", "0"])
    assert cometric_apply(deg, PseudoInverse(1e-9), [0, 1], [0, 1], (0, 0)) == 0.0
    du = CovectorField.differential(ScalarField(TU, "u"))
    assert cometric_apply(POLAR, EXACT, du, du, (2.0, 0.0)) == 0.25


# connections ----------------------------------------------------------------------

def test_koszul_examples():
    for A in (DX, DY):
        for B in (DX, DY):
            for C in (DX, DY):
                assert koszul(EUCLID, A, B, C, (0.2, 0.3)) == 0.0
    assert koszul(POLAR, DT, DU, DU, (2.0, 0.0)) == pytest.approx(2.0)
    # twisted g = dt^2 + b^2 du^2, b = t(1+u^2): K(dt, du, du) = b dt(b) = 0.5*2*2
    tw = MetricField.diagonal(TU, ["1", "(t*(1+u^2))^2"])
    assert koszul(tw, DT, DU, DU, (0.5, 1.0)) == pytest.approx(2.0)


def test_semi_symmetric_examples():
    p = (0.1, 0.2)
    assert ssm_koszul(EUCLID, DX, DY, DX, DY, p) == 1.0
    assert ssm_koszul(EUCLID, DX, DX, DX, DX, p) == 0.0
    assert ssnm_koszul(EUCLID, DX, DY, DX, DY, p) == 1.0
    zero = VectorField.zero(XY)
    X, Y, Z = VectorField(XY, ("y", "x^2")), VectorField(XY, ("1", "x*y")), DY
    g = MetricField.diagonal(XY, ["1+y^2", "2+x"])
    assert ssnm_koszul(g, zero, X, Y, Z, p) == koszul(g, X, Y, Z, p)


def test_almost_product_examples():
    g = MetricField(XY, (("1+y^2", "x/4"), ("x/4", "2+x")))
    X, Y, Z = VectorField(XY, ("y", "x^2")), VectorField(XY, ("1", "x*y")), DY
    p = (0.3, -0.2)
    assert ap_koszul(g, ProductStructure.identity(XY), X, Y, Z, p) == koszul(g, X, Y, Z, p)
    refl = ProductStructure.diagonal(XY, [1, -1])
    for A in (DX, DY):
        for B in (DX, DY):
            assert ap_koszul(EUCLID, refl, A, B, DX, p) == 0.0
    # warped J = (id, id), b = t: K~(dt, du, du) = b b' g_F = 3 at t = 3
    assert ap_koszul(POLAR, ProductStructure.identity(TU), DT, DU, DU, (3.0, 0.0)) == pytest.approx(3.0)


def test_lower_cov_deriv_examples():
    w = lower_cov_deriv(EUCLID, ConnectionSpec(Kind.PLAIN), DX, VectorField(XY, ("2", "-1")), (0.4, 0.4))
    assert np.all(w.at(np.array([0.4, 0.4])) == 0.0)
    w = lower_cov_deriv(POLAR, ConnectionSpec(Kind.PLAIN), DT, DU, (2.0, 0.0))
    np.testing.assert_allclose(w.at(np.array([2.0, 0.0])), [0.0, 2.0])
    w = lower_cov_deriv(EUCLID, ConnectionSpec(Kind.SSM, P=DX), DY, DX, (1.0, -1.0))
    np.testing.assert_allclose(w.at(np.array([1.0, -1.0])), [0.0, 1.0])
    with pytest.raises(SpecMismatch):
        ConnectionSpec(Kind.SSM)


def test_validate_structure_examples():
    pts = [(0.1, 0.2), (-1.0, 2.0)]
    g = MetricField(XY, (("1+y^2", "x/4"), ("x/4", "2+x")))
    r = validate_structure(g, ProductStructure.identity(XY), pts)
    assert r.passed and r.involution_residual == 0.0 and r.isometry_residual == 0.0
    assert validate_structure(EUCLID, ProductStructure.diagonal(XY, [1, -1]), pts).passed
    r = validate_structure(EUCLID, ProductStructure.diagonal(XY, [2, 1]), pts)
    assert not r.passed and r.involution_residual == 3.0


# curvature ------------------------------------------------------------------------

def test_riemann_examples():
    assert riemann(EUCLID, EXACT, DX, DY, DY, DX, (0.3, 0.3)) == 0.0
    assert riemann(POLAR, EXACT, DT, DU, DU, DT, (1.5, 0.0)) == pytest.approx(0.0, abs=1e-14)
    S = Chart(("th", "ph"), ((0.1, 3.0), (-4, 4)))
    g = MetricField.diagonal(S, ["1", "sin(th)^2"])
    a, b = VectorField.coordinate(S, 0), VectorField.coordinate(S, 1)
    v = riemann(g, EXACT, a, b, b, a, (math.pi / 2, 0.0))
    assert v == pytest.approx(1.0, rel=1e-14)
    assert christoffel_riemann(g, a, b, b, a, (math.pi / 2, 0.0)) == pytest.approx(v, rel=1e-14)


def test_semi_symmetric_curvature_examples():
    p = (0.3, 0.1)
    zero = VectorField.zero(XY)
    g = MetricField.diagonal(XY, ["1+y^2", "2+x"])
    X, Y = VectorField(XY, ("y", "x^2")), VectorField(XY, ("1", "x*y"))
    plain = riemann(g, EXACT, X, Y, DY, DX, p)
    assert ssm_riemann(g, EXACT, zero, X, Y, DY, DX, p) == plain
    assert ssnm_riemann(g, EXACT, zero, X, Y, DY, DX, p) == plain
    assert ssm_riemann(EUCLID, EXACT, DX, DX, DY, DY, DX, p) == 0.0


def test_ssnm_curvature_is_not_last_pair_antisymmetric():
    assert observations(30)["ssnm curvature last-pair antisymmetry residual"] > 1e-3


def test_almost_product_curvature_examples():
    p = (0.3, 0.1)
    g = MetricField.diagonal(XY, ["1+y^2", "2+x"])
    X, Y = VectorField(XY, ("y", "x^2")), VectorField(XY, ("1", "x*y"))
    assert ap_riemann(g, EXACT, ProductStructure.identity(XY), X, Y, DY, DX, p) == \
        riemann(g, EXACT, X, Y, DY, DX, p)
    refl = ProductStructure.diagonal(XY, [1, -1])
    for A in (DX, DY):
        for B in (DX, DY):
            assert ap_riemann(EUCLID, EXACT, refl, A, B, B, A, p) == 0.0


# products ---------------------------------------------------------------------------

I_CHART = Chart(("t",), ((0, 10),))
U_CHART = Chart(("u",), ((-5, 5),))
V_CHART = Chart(("v",), ((-5, 5),))
G_I = MetricField.diagonal(I_CHART, ["-1"])
G_U = MetricField.diagonal(U_CHART, ["1"])
G_V = MetricField.diagonal(V_CHART, ["1"])


def test_product_metric_examples():
    M = build_multiply_warped(MultiplyWarpedSpec((I_CHART, G_I), ((U_CHART, G_U),), ("t",)))
    np.testing.assert_array_equal(M.metric.matrix((3.0, 0.0)), np.diag([-1.0, 9.0]))
    K = build_kasner((I_CHART, G_I), "t", [0.5, 2.0], [(U_CHART, G_U), (V_CHART, G_V)])
    np.testing.assert_allclose(K.metric.matrix((2.0, 0.0, 0.0)), np.diag([-1.0, 2.0, 16.0]))
    D = build_multiply_warped(MultiplyWarpedSpec((I_CHART, G_I), ((U_CHART, G_U),), ("t^2",)))
    # t = 0 is the degenerate boundary of the open chart; the metric still evaluates there
    assert np.linalg.matrix_rank(D.metric.jet(np.array([0.0, 0.0])).val) == 1
    Tb = Chart(("t",), ((-5, 5),))
    tw = build_twisted(TwistedSpec((Tb, MetricField.diagonal(Tb, ["1"])), (U_CHART, G_U), "t*(1+u^2)"))
    np.testing.assert_allclose(tw.metric.matrix((0.5, 1.0)), np.diag([1.0, 1.0]))
    plain = build_twisted(TwistedSpec((I_CHART, G_I), (U_CHART, G_U), "t"))
    np.testing.assert_array_equal(plain.metric.matrix((3.0, 0.0)), M.metric.matrix((3.0, 0.0)))
    unit = Chart(("t",), ((0, 1),))
    m4 = build_twisted(TwistedSpec((unit, MetricField.diagonal(unit, ["-1"])), (U_CHART, G_U), "t^2*(1+u^2)"))
    np.testing.assert_allclose(m4.metric.matrix((0.5, 1.0)), np.diag([-1.0, 0.25]))


def test_lift_examples():
    K = build_kasner((I_CHART, G_I), "t", [0.5, 2.0], [(U_CHART, G_U), (V_CHART, G_V)])
    du = lift(K, VectorField.coordinate(U_CHART, 0), fiber(1))
    assert du.tag == fiber(1)
    np.testing.assert_array_equal(du.jet(np.array([1.0, 0.0, 0.0])).val, [0.0, 1.0, 0.0])
    tdt = lift(K, VectorField(I_CHART, ("t",)), BASE)
    np.testing.assert_array_equal(tdt.jet(np.array([1.5, 0.0, 0.0])).val, [1.5, 0.0, 0.0])
    with pytest.raises(SpecMismatch):
        lift(K, VectorField(K.chart, ("u", "0", "0")), BASE)


def test_closed_form_key_examples():
    hits = CATALOG.lookup(CatalogKey(Kind.SSM, Obj.CURVATURE, "warped", BASE, (BASE, fiber(2), fiber(2), BASE)))
    assert [f.label(i) for f, i, _, _ in hits] == ["ssm-curvature/warped/P-base (4)"]
    hits = CATALOG.lookup(CatalogKey(Kind.PLAIN, Obj.KOSZUL, "twisted", None, (fiber(1),) * 3))
    assert [f.label(i) for f, i, _, _ in hits] == ["plain-koszul/twisted (4)"]
    with pytest.raises(CaseMismatch):
        CatalogKey(Kind.PLAIN, Obj.CURVATURE, "twisted", None, (BASE,) * 5)


def test_factor_riemann_examples():
    S = Chart(("th", "ph"), ((0.1, 3.0), (-4, 4)))
    gS = MetricField.diagonal(S, ["1", "sin(th)^2"])
    flat = Chart(("a", "b"), ((-5, 5), (-5, 5)))
    M = build_kasner((I_CHART, G_I), "t", [1.0, 1.0], [(S, gS), (flat, MetricField.diagonal(flat, ["1", "1"]))])
    p = (2.0, 1.1, 0.3, 0.0, 0.0)
    a, b = (lift(M, VectorField.coordinate(S, k), fiber(1)) for k in range(2))
    want = christoffel_riemann(gS, VectorField.coordinate(S, 0), VectorField.coordinate(S, 1),
                               VectorField.coordinate(S, 1), VectorField.coordinate(S, 0), (1.1, 0.3))
    assert factor_riemann(M, fiber(1), [a, b, b, a], p) == pytest.approx(want, rel=1e-13)
    c, d = (lift(M, VectorField.coordinate(flat, k), fiber(2)) for k in range(2))
    assert factor_riemann(M, fiber(2), [c, d, d, c], p) == 0.0
    dt = lift(M, VectorField.coordinate(I_CHART, 0), BASE)
    assert factor_riemann(M, BASE, [dt, dt, dt, dt], p) == 0.0
