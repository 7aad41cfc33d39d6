"""Named space-times, headline values and the degenerate-limit probe."""

import math

import numpy as np
import pytest

from koszulkit.degenerate import (COUNTEREXAMPLE_TWISTING, HYPOTHESIS_TWISTING, hypothesis_holds, probe,
                                  twisted_probe_manifold)
from koszulkit.errors import UnknownFixture
from koszulkit.fixtures import FIXTURES, component, fixture_names, headline_checks, params_for, run_fixture


def test_fixture_names_and_parameters():
    assert fixture_names() == ["M1", "M2", "M3", "M4"]
    assert params_for("M1", t=0.25).t == 0.25
    assert params_for("M2", exponents=[1, 1]).exponents == (1, 1)
    with pytest.raises(UnknownFixture):
        params_for("M9")
    with pytest.raises(UnknownFixture):
        params_for("M1", colour="red")
    with pytest.raises(UnknownFixture):
        run_fixture("M2", exponents=(1.0,))


@pytest.mark.parametrize("label,expected", [
    ("M1 b=t t=2 ssm K(V,dt,W)/g_F(V,W)", -2.0),
    ("M1 ssnm K(dt,dt,dt)", 1.0),
    ("M1 b=t^2 t=0.5 ssm R(dt,V,W,dt)/g_F(V,W)", -0.25),
    ("M1 b=t^2 t=0.5 ssnm R(V,dt,W,dt)/g_F(V,W)", 1.0),
    ("M1 b=t^2 t=0.5 J=id ap R(dt,V,dt,W)/g_F(V,W)", 0.5),
])
def test_headline_values(label, expected):
    h = {c.label: c for c in headline_checks()}[label]
    assert h.expected == expected
    for v in (h.printed, h.catalog, h.oracle):
        assert v == pytest.approx(expected, rel=1e-8, abs=1e-12)


def test_hand_computed_ssm_koszul_scales_with_the_warping():
    # K-(V, dt, W) = (b b' - b^2) g_F(V, W) for P = dt, g_I = -dt^2
    for warping, t in [("t", 2.0), ("t^2", 0.5), ("t^3", 0.8)]:
        p = FIXTURES["M1"].with_bindings(warping=warping, t=t)
        k = int(warping[-1]) if "^" in warping else 1
        b, db = t ** k, k * t ** (k - 1)
        want = b * db - b * b
        for v in component(p, "ssm", "koszul", "1t1", per_unit=(0, 2)):
            assert v == pytest.approx(want, rel=1e-10)


def test_fixture_reports_cover_every_printed_item():
    rep = run_fixture("M1")
    d = rep.to_dict()
    assert d["cases"] == len(rep.records) > 50
    assert all(math.isfinite(r.oracle) for r in rep.records)
    assert {r.fixture for r in rep.records} == {"M1"}


def test_constant_exponents_remove_the_derivative_findings():
    bad = {r.item for r in run_fixture("M2", exponents=(0.0, 0.0)).records if not r.passed}
    assert "M2 ssm-curvature/P-fiber (9)" not in bad
    assert "M2 ssnm-curvature/P-fiber (9)" not in bad
    assert "M2 ssm-koszul/P-fiber (9)" in bad


def test_m4_degenerate_section():
    rep = run_fixture("M4")
    assert rep.degenerate is not None and rep.degenerate.hypothesis
    assert rep.degenerate.converged and not rep.degenerate.diverged
    unmet = run_fixture("M4", warping="t*(1+a^2)")
    assert unmet.degenerate is None and "hypothesis" in unmet.degenerate_skipped
    nonzero = run_fixture("M4", warping="1+t")
    assert nonzero.degenerate is None and "does not vanish" in nonzero.degenerate_skipped


def test_probe_hypothesis_detection():
    x0 = np.array([0.0, 0.4, 0.5, -0.3])
    assert hypothesis_holds(twisted_probe_manifold(HYPOTHESIS_TWISTING), x0)
    assert not hypothesis_holds(twisted_probe_manifold(COUNTEREXAMPLE_TWISTING), x0)


def test_probe_series_converge_to_the_degenerate_value():
    # item (1) approaches its limit like t ~ sqrt(b), so the path runs down to b = 1e-14
    res = probe()
    assert res.hypothesis and res.converged and not res.diverged
    for s in res.series:
        assert s.continuous and s.limit_gap < 1e-6
        # closed forms track the exact inverse along the path
        for v, o in zip(s.values, s.oracle):
            assert v == pytest.approx(o, rel=1e-6, abs=1e-8)


def test_counterexample_is_recorded_as_divergent():
    res = probe(COUNTEREXAMPLE_TWISTING, decades=range(2, 12))
    assert not res.hypothesis and res.diverged
    d = res.to_dict()
    assert d["diverged"] is True and len(d["series"]) == 5
