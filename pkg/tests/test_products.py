"""Product assembly, lifting, and the closed-form catalog on a hand-computable warped product."""

import numpy as np
import pytest

from koszulkit.connections import Kind, ProductStructure
from koszulkit.errors import CaseMismatch, SpecMismatch, UnknownFactor
from koszulkit.manifold import Chart, MetricField, VectorField
from koszulkit.products import (BASE, MultiplyWarpedSpec, Tag, TwistedSpec, build_kasner,
                                build_multiply_warped, build_twisted, factor_koszul, fiber, lift, lift_structure)
from koszulkit.products.catalog import CATALOG, CatalogKey, NotCovered, Obj, Pattern, closed_form
from koszulkit.verify import oracle_value
from koszulkit.sampling import Instance

BASE_CHART = Chart(("t",), ((0.0, 10.0),), name="B")
FIB_CHART = Chart(("u", "v"), ((-5.0, 5.0), (-5.0, 5.0)), name="F")
G_BASE = MetricField.diagonal(BASE_CHART, ["1"])
G_FIB = MetricField.diagonal(FIB_CHART, ["1", "1+u^2"])


@pytest.fixture
def warped():
    return build_multiply_warped(MultiplyWarpedSpec((BASE_CHART, G_BASE), ((FIB_CHART, G_FIB),), ("t",)))


def test_tags():
    assert Tag.parse("B") == BASE and Tag.parse("F2") == fiber(2) and str(fiber(3)) == "F3"
    with pytest.raises(UnknownFactor):
        Tag.parse("Q")


def test_warped_metric_is_block_diagonal(warped):
    x = warped.chart.point({"t": 2.0, "u": 0.5, "v": 0.0})
    np.testing.assert_allclose(warped.metric.jet(x).val, np.diag([1.0, 4.0, 4.0 * 1.25]))
    assert warped.n_fibers == 1 and warped.kind == "warped"
    np.testing.assert_allclose(warped.cometric.matrix(warped.metric, x), np.diag([1.0, 0.25, 0.25 / 1.25]))


def test_twisted_and_kasner_builders():
    M = build_twisted(TwistedSpec((BASE_CHART, G_BASE), (FIB_CHART, G_FIB), "t*(1+u^2)"))
    x = M.chart.point({"t": 1.0, "u": 1.0, "v": 0.0})
    assert M.metric.jet(x).val[1, 1] == pytest.approx(4.0)
    F2 = Chart(("w",), ((-5.0, 5.0),))
    K = build_kasner((BASE_CHART, G_BASE), "t", [0.5, 2.0], [(FIB_CHART, G_FIB), (F2, MetricField.diagonal(F2, ["1"]))])
    assert K.n_fibers == 2
    assert K.warping(2)({"t": 3.0, "u": 0.0, "v": 0.0, "w": 0.0}) == pytest.approx(9.0)
    assert K.warping(1)({"t": 4.0, "u": 0.0, "v": 0.0, "w": 0.0}) == pytest.approx(2.0)
    with pytest.raises(SpecMismatch):
        build_kasner((BASE_CHART, G_BASE), "t", [1.0, 1.0], [(FIB_CHART, G_FIB), (FIB_CHART, G_FIB)])
    with pytest.raises(SpecMismatch):
        build_multiply_warped(MultiplyWarpedSpec((BASE_CHART, G_BASE), ((FIB_CHART, G_FIB),), ("t", "t")))
    with pytest.raises(SpecMismatch):
        build_multiply_warped(MultiplyWarpedSpec((BASE_CHART, G_BASE), ((FIB_CHART, G_FIB),), ("u",)))


def test_lift_places_components_in_the_factor_block(warped):
    V = lift(warped, VectorField(FIB_CHART, ("1", "u")), fiber(1))
    x = warped.chart.point({"t": 2.0, "u": 0.5, "v": 0.0})
    np.testing.assert_allclose(V.jet(x).val, [0.0, 1.0, 0.5])
    with pytest.raises(SpecMismatch):
        lift(warped, VectorField(warped.chart, ("1", "1", "0")), fiber(1))
    with pytest.raises(SpecMismatch):
        lift(warped, VectorField(warped.chart, ("0", "t", "0")), fiber(1))
    with pytest.raises(UnknownFactor):
        lift(warped, VectorField(FIB_CHART, ("1", "0")), fiber(2))


def test_lift_structure_blocks(warped):
    J = lift_structure(warped, [ProductStructure(BASE_CHART, (("1",),)),
                                ProductStructure(FIB_CHART, (("1", "0"), ("0", "-1")))])
    x = warped.chart.point({"t": 2.0, "u": 0.5, "v": 0.0})
    np.testing.assert_allclose(J.jet(x).val, np.diag([1.0, 1.0, -1.0]))
    with pytest.raises(SpecMismatch):
        lift_structure(warped, [ProductStructure(BASE_CHART, (("1",),))])


def test_factor_koszul_uses_the_fiber_metric(warped):
    V = lift(warped, VectorField.coordinate(FIB_CHART, "v"), fiber(1))
    U = lift(warped, VectorField.coordinate(FIB_CHART, "u"), fiber(1))
    # K_F(dv, dv, du) = -1/2 d_u (1+u^2) = -u
    p = {"t": 2.0, "u": 0.5, "v": 0.0}
    assert factor_koszul(warped, fiber(1), [V, V, U], p) == pytest.approx(-0.5)


def test_pattern_parse_and_bind():
    pat = Pattern.parse("-X Vi Wj", twisted=False)
    assert pat.sign == -1.0 and pat.shape == (False, True, True)
    assert pat.bind([BASE, fiber(1), fiber(2)]) == {"i": 1, "j": 2}
    assert pat.bind([fiber(1), fiber(1), fiber(2)]) is None
    assert Pattern.parse("Vi Wi", twisted=False).bind([fiber(1), fiber(2)]) is None
    with pytest.raises(ValueError):
        Pattern.parse("X Vi Xj", twisted=False)
    with pytest.raises(ValueError):
        Pattern.parse("X V", twisted=False)


def test_catalog_key_validation():
    with pytest.raises(CaseMismatch):
        CatalogKey(Kind.PLAIN, Obj.KOSZUL, "warped", None, (BASE, BASE))
    with pytest.raises(CaseMismatch):
        CatalogKey(Kind.SSM, Obj.KOSZUL, "warped", None, (BASE, BASE, BASE))
    assert str(CatalogKey(Kind.SSM, Obj.KOSZUL, "warped", BASE, (BASE, fiber(1), fiber(1)))) == \
        "ssm/koszul/warped/P=B/B,F1,F1"


def test_closed_form_twisted_koszul_by_hand():
    # K(V, dt, W) = 1/2 dt (b^2 g_F(V, W)) = b b' g_F(V, W) with b = t
    M = build_twisted(TwistedSpec((BASE_CHART, G_BASE), (FIB_CHART, G_FIB), "t"))
    p = M.chart.point({"t": 2.0, "u": 0.5, "v": 0.0})
    V = lift(M, VectorField.coordinate(FIB_CHART, "v"), fiber(1))
    T = lift(M, VectorField.coordinate(BASE_CHART, "t"), BASE)
    key = CatalogKey(Kind.PLAIN, Obj.KOSZUL, "twisted", None, (fiber(1), BASE, fiber(1)))
    val = closed_form(key, M, [V, T, V], None, p)
    assert val == pytest.approx(2.0 * 1.0 * 1.25, rel=1e-14)
    inst = Instance(M, p, {}, None, None)
    assert oracle_value(Kind.PLAIN, Obj.KOSZUL, inst, [V, T, V]) == pytest.approx(val, rel=1e-14)


def test_closed_form_without_a_table_is_not_covered(warped):
    p = warped.chart.point({"t": 2.0, "u": 0.5, "v": 0.0})
    V = lift(warped, VectorField.coordinate(FIB_CHART, "v"), fiber(1))
    key = CatalogKey(Kind.PLAIN, Obj.KOSZUL, "warped", None, (fiber(1),) * 3)
    assert closed_form(key, warped, [V, V, V], None, p) is NotCovered


def test_closed_form_argument_checks(warped):
    p = warped.chart.point({"t": 2.0, "u": 0.5, "v": 0.0})
    V = lift(warped, VectorField.coordinate(FIB_CHART, "v"), fiber(1))
    key = CatalogKey(Kind.PLAIN, Obj.KOSZUL, "warped", None, (BASE, BASE, BASE))
    with pytest.raises(CaseMismatch):
        closed_form(key, warped, [V, V, V], None, p)
    key = CatalogKey(Kind.SSM, Obj.KOSZUL, "warped", BASE, (fiber(1),) * 3)
    with pytest.raises(CaseMismatch):
        closed_form(key, warped, [V, V, V], None, p)
    tw = CatalogKey(Kind.PLAIN, Obj.KOSZUL, "twisted", None, (fiber(1),) * 3)
    with pytest.raises(CaseMismatch):
        closed_form(tw, warped, [V, V, V], None, p)


def test_catalog_covers_every_connection_and_product():
    seen = {(f.connection, f.obj, f.product, f.p_where) for f in CATALOG.families}
    for kind in Kind:
        for prod in ("warped", "twisted"):
            if kind is Kind.PLAIN and prod == "warped":
                continue
            assert any(k is kind and pr.value == prod for k, _, pr, _ in seen), (kind, prod)
    for fam in CATALOG.families:
        assert fam.items and CATALOG.by_name(fam.name) is fam


def test_not_covered_is_distinct_from_zero():
    assert NotCovered is not None and NotCovered != 0.0
