"""Charts, fields, Koszul forms and curvatures on hand-computable metrics."""

import math

import numpy as np
import pytest

from koszulkit.connections import (ConnectionSpec, Kind, ProductStructure, ap_koszul, koszul,
                                   lower_cov_deriv, ssm_koszul, ssnm_koszul, validate_structure)
from koszulkit.curvature import ap_riemann, christoffel_riemann, riemann, ssm_riemann, ssnm_riemann
from koszulkit.errors import (ChartMismatch, DomainError, InvalidStructure, RankDeficiencyAmbiguous,
                              SingularMetric, SpecMismatch, UnknownSymbol)
from koszulkit.jets import Jet, coordinate
from koszulkit.manifold import (Chart, ExactInverse, MetricField, PseudoInverse, ScalarField, VectorField,
                                cometric_apply, lie_bracket, metric_eval)

TH = 0.7
SPHERE = Chart(("th", "ph"), ((0.1, 3.0), (-4.0, 4.0)), name="S2")
G_SPHERE = MetricField.diagonal(SPHERE, ["1", "sin(th)^2"])
E_TH = VectorField.coordinate(SPHERE, "th")
E_PH = VectorField.coordinate(SPHERE, "ph")
P0 = {"th": TH, "ph": 0.2}


def test_chart_validation_and_domain():
    with pytest.raises(SpecMismatch):
        Chart(("x", "x"), ((0, 1), (0, 1)))
    with pytest.raises(SpecMismatch):
        Chart(("x",), ((1, 0),))
    with pytest.raises(DomainError, match="th"):
        SPHERE.point({"th": 3.5, "ph": 0.0})
    with pytest.raises(UnknownSymbol):
        SPHERE.point({"th": 1.0, "ph": 0.0, "r": 1.0})
    with pytest.raises(ChartMismatch):
        SPHERE.point([1.0])
    np.testing.assert_array_equal(SPHERE.point(P0), [TH, 0.2])


def test_metric_symmetry_required():
    with pytest.raises(SpecMismatch):
        MetricField(SPHERE, (("1", "th"), ("0", "1")))


def test_jet_product_rule():
    x = np.array([0.3, -0.2])
    a, b = coordinate(x, 0), coordinate(x, 1)
    f = a * a * b
    assert float(f.val) == pytest.approx(0.09 * -0.2)
    np.testing.assert_allclose(f.grad, [2 * 0.3 * -0.2, 0.09])
    np.testing.assert_allclose(f.hess, [[2 * -0.2, 0.6], [0.6, 0.0]])
    r = (a + 2.0).reciprocal()
    assert float(r.grad[0]) == pytest.approx(-1 / 2.3 ** 2)


def test_lie_bracket():
    X = VectorField(SPHERE, ("ph", "0"))
    Y = VectorField(SPHERE, ("0", "th^2"))
    B = lie_bracket(X, Y)
    # [ph d_th, th^2 d_ph] = 2 ph th d_ph - th^2 d_th
    np.testing.assert_allclose(B.at(P0), [-TH ** 2, 2 * 0.2 * TH])
    np.testing.assert_allclose(lie_bracket(Y, X).at(P0), -B.at(P0))


def test_metric_eval_and_cometric():
    assert metric_eval(G_SPHERE, E_PH, E_PH, P0) == pytest.approx(math.sin(TH) ** 2)
    val = cometric_apply(G_SPHERE, ExactInverse(), [0.0, 1.0], [0.0, 1.0], P0)
    assert val == pytest.approx(1 / math.sin(TH) ** 2)


def test_inverse_rules_on_singular_metric():
    c = Chart(("x", "y"), ((-1, 1), (-1, 1)))
    g = MetricField.diagonal(c, ["1", "x^2"])
    x = np.array([0.0, 0.0])
    with pytest.raises(SingularMetric):
        ExactInverse().matrix(g, x)
    np.testing.assert_allclose(PseudoInverse().matrix(g, x), [[1, 0], [0, 0]])
    with pytest.raises(RankDeficiencyAmbiguous):
        PseudoInverse(rank_tol=1e-4).matrix(g, np.array([1e-2, 0.0]))


def test_koszul_on_sphere():
    # K(d_ph, d_ph, d_th) = -1/2 d_th g_phph = -sin cos
    assert koszul(G_SPHERE, E_PH, E_PH, E_TH, P0) == pytest.approx(-math.sin(TH) * math.cos(TH), rel=1e-14)
    assert koszul(G_SPHERE, E_TH, E_PH, E_PH, P0) == pytest.approx(math.sin(TH) * math.cos(TH), rel=1e-14)
    assert koszul(G_SPHERE, E_TH, E_TH, E_TH, P0) == 0.0


def test_semi_symmetric_koszul_terms():
    P = E_TH
    base = koszul(G_SPHERE, E_PH, E_PH, E_TH, P0)
    g_ph = math.sin(TH) ** 2
    # K_ssm(X,Y,Z) = K(X,Y,Z) + g(P,Y) g(X,Z) - g(X,Y) g(P,Z)
    assert ssm_koszul(G_SPHERE, P, E_PH, E_PH, E_TH, P0) == pytest.approx(base - g_ph, rel=1e-14)
    # K_ssnm(X,Y,Z) = K(X,Y,Z) + g(P,Y) g(X,Z)
    assert ssnm_koszul(G_SPHERE, P, E_TH, E_TH, E_TH, P0) == pytest.approx(1.0, rel=1e-14)
    assert ssnm_koszul(G_SPHERE, P, E_PH, E_PH, E_TH, P0) == pytest.approx(base, rel=1e-14)


def test_product_structure_checks():
    J = ProductStructure(SPHERE, (("1", "0"), ("0", "-1")))
    rep = validate_structure(G_SPHERE, J, [P0, {"th": 1.2, "ph": -1.0}])
    assert rep.passed and rep.points == 2
    # averaging over J kills the odd part: K(d_ph, d_ph, d_th) has one J-odd slot pair
    assert ap_koszul(G_SPHERE, J, E_PH, E_PH, E_TH, P0) == pytest.approx(0.0, abs=1e-15)
    bad = ProductStructure(SPHERE, (("2", "0"), ("0", "1")))
    with pytest.raises(InvalidStructure):
        ap_koszul(G_SPHERE, bad, E_PH, E_PH, E_TH, P0)
    assert not validate_structure(G_SPHERE, bad, [P0]).passed


def test_lower_cov_deriv_is_koszul_one_form():
    w = lower_cov_deriv(G_SPHERE, ConnectionSpec(Kind.PLAIN), E_PH, E_PH, P0)
    np.testing.assert_allclose(w.at(SPHERE.point(P0)),
                               [koszul(G_SPHERE, E_PH, E_PH, E, P0) for E in (E_TH, E_PH)])


def test_sphere_curvature_two_routes():
    want = math.sin(TH) ** 2
    assert riemann(G_SPHERE, ExactInverse(), E_TH, E_PH, E_PH, E_TH, P0) == pytest.approx(want, rel=1e-13)
    assert christoffel_riemann(G_SPHERE, E_TH, E_PH, E_PH, E_TH, P0) == pytest.approx(want, rel=1e-13)
    assert riemann(G_SPHERE, ExactInverse(), E_TH, E_PH, E_TH, E_PH, P0) == pytest.approx(-want, rel=1e-13)


def test_flat_metric_in_polar_coordinates_has_zero_curvature():
    c = Chart(("r", "a"), ((0.1, 5.0), (-4.0, 4.0)))
    g = MetricField.diagonal(c, ["1", "r^2"])
    X = VectorField(c, ("1+a", "r"))
    Y = VectorField(c, ("a^2", "1"))
    p = {"r": 1.3, "a": 0.4}
    assert abs(riemann(g, ExactInverse(), X, Y, Y, X, p)) < 1e-12


def test_curvature_reductions():
    zero = VectorField.zero(SPHERE)
    ident = ProductStructure(SPHERE, (("1", "0"), ("0", "1")))
    args = (E_TH, VectorField(SPHERE, ("ph", "1")), E_PH, E_TH, P0)
    plain = riemann(G_SPHERE, ExactInverse(), *args)
    assert ssm_riemann(G_SPHERE, ExactInverse(), zero, *args) == pytest.approx(plain, abs=1e-14)
    assert ssnm_riemann(G_SPHERE, ExactInverse(), zero, *args) == pytest.approx(plain, abs=1e-14)
    assert ap_riemann(G_SPHERE, ExactInverse(), ident, *args) == pytest.approx(plain, abs=1e-14)


def test_scalar_field_domain_error():
    f = ScalarField(SPHERE, "log(th - 1)")
    with pytest.raises(DomainError):
        f({"th": 0.5, "ph": 0.0})
