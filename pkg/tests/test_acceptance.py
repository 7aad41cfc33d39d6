"""Acceptance criteria 1-7.  Each test records one PASS/FAIL line (see conftest)."""

import json
import time

import pytest

from koszulkit.cli import main
from koszulkit.degenerate import degenerate_suite
from koszulkit.fixtures import fixture_names, headline_checks, run_fixture
from koszulkit.identities import curvature_identities, koszul_identities, second_oracle
from koszulkit.verify import catalog_suite, findings

# Table items that disagree with the definitional pipeline on every sampled
# instance; each is analysed in the decisions ledger.
KNOWN_CATALOG_FINDINGS = {
    ("ssm-curvature/twisted/P-base (6)", "Fa,Fa,Fa,Fa"),
    ("ssnm-curvature/twisted/P-base (7)", "Fa,Fa,Fa,B"),
    ("ssm-koszul/warped/P-fiber (9)", "Fa,Fa,Fa"),
    ("ssm-curvature/warped/P-base (12)", "Fa,Fb,Fb,Fa"),
    ("ssm-curvature/warped/P-fiber (10)", "B,Fa,Fl,Fa"),
    ("ssm-curvature/warped/P-fiber (16)", "Fl,Fa,Fa,Fl"),
    ("ssm-curvature/warped/P-fiber (16)", "Fa,Fl,Fl,Fa"),
    ("ssm-curvature/warped/P-fiber (16)", "Fa,Fb,Fb,Fa"),
    ("ap-curvature/warped (11)", "Fa,Fb,Fb,Fa"),
}

# Printed fixture items whose value differs from the oracle, by fixture.
KNOWN_FIXTURE_DISAGREEMENTS = {
    "M1": {"M1 ssm-curvature/P-fiber (6)"},
    "M2": {"M2 ssm-curvature/P-base (11)", "M2 ssm-curvature/P-fiber (9)", "M2 ssm-curvature/P-fiber (14)",
           "M2 ssm-koszul/P-fiber (9)", "M2 ssnm-curvature/P-fiber (9)", "M2 ssnm-curvature/P-fiber (17)",
           "M2 ssnm-curvature/P-fiber (18)"},
    "M3": {"M3 ssm-curvature/P-base (11)", "M3 ssm-curvature/P-fiber (9)", "M3 ssm-curvature/P-fiber (15)",
           "M3 ssm-koszul/P-fiber (9)", "M3 ssnm-curvature/P-fiber (9)", "M3 ssnm-curvature/P-fiber (17)",
           "M3 ssnm-curvature/P-fiber (18)"},
    "M4": {"M4 ap-curvature (7)", "M4 ssm-curvature/P-base (6)", "M4 ssnm-curvature/P-base (7)"},
}


def _timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t0


def test_criterion_1_koszul_identities(verdict):
    recs, dt = _timed(koszul_identities, 500, 0)
    names = {r.key for r in recs}
    counts = {k: sum(r.key == k for r in recs) for k in names}
    worst = max(r.abs_err for r in recs)
    ok = all(r.passed for r in recs) and worst < 1e-9 and dt < 10.0 and set(counts.values()) == {500}
    verdict(1, ok, f"{len(names)} identities x 500, max |err| {worst:.2e}, {dt:.2f} s")
    assert ok


def test_criterion_2_curvature_symmetries(verdict):
    recs, dt = _timed(curvature_identities, 300, 0)
    red = [r for r in recs if "equals R" in r.key]
    worst_red = max(r.abs_err for r in red)
    counts = {k: sum(r.key == k for r in recs) for k in {r.key for r in recs}}
    ok = all(r.passed for r in recs) and worst_red <= 1e-12 and dt < 20.0 and set(counts.values()) == {300}
    verdict(2, ok, f"{len(counts)} checks x 300, reductions max |err| {worst_red:.2e}, {dt:.2f} s")
    assert ok


def test_criterion_3_two_curvature_routes(verdict):
    recs = second_oracle(100, 0, 1e-8, 1e-10)
    worst = max(r.rel_err for r in recs)
    ok = len(recs) == 100 and all(r.passed for r in recs)
    verdict(3, ok, f"100 metrics, Koszul expansion vs Christoffel, max rel err {worst:.2e}")
    assert ok


def test_criterion_4_catalog_against_oracle(verdict):
    recs, dt = _timed(catalog_suite, 20, 0, 1e-8, 1e-10)
    found = findings(recs)
    persistent = {(f.item, f.case) for f in found if f.persistent}
    stray = [r for r in recs if not r.passed and (r.item, r.case) not in persistent]
    ok = dt < 60.0 and not stray and persistent == KNOWN_CATALOG_FINDINGS
    verdict(4, ok, f"{len(recs)} comparisons on 20 instances per table, {sum(r.passed for r in recs)} agree, "
                   f"{len(persistent)} persistent findings emitted, {dt:.1f} s")
    for f in found:
        print(f"  finding: {f.item} case {f.case}: {f.failed}/{f.cases} failed, worst |err| {f.worst_abs_err:.3g}")
    assert dt < 60.0
    assert not stray
    assert persistent == KNOWN_CATALOG_FINDINGS


@pytest.fixture(scope="module")
def fixture_reports():
    return {name: run_fixture(name) for name in fixture_names()}


def test_criterion_5_headline_values_three_way(verdict, fixture_reports):
    checks = headline_checks(1e-8)
    by_label = {h.label: h for h in checks}
    khat = by_label["M1 ssnm K(dt,dt,dt)"]
    rbar = by_label["M1 b=t^2 t=0.5 ssm R(dt,V,W,dt)/g_F(V,W)"]
    total = sum(len(r.records) for r in fixture_reports.values())
    failed = sum(not x.passed for r in fixture_reports.values() for x in r.records)
    ok = all(h.passed for h in checks)
    verdict(5, ok and failed == 0,
            f"headline three-way {'agree' if ok else 'DISAGREE'} (K^(dt,dt,dt)={khat.oracle:.12g}, "
            f"R-(dt,V,W,dt)/g_F={rbar.oracle:.12g}); printed tables {total - failed}/{total} three-way, "
            f"{failed} disagreements from documented printed-formula and table findings")
    assert khat.passed and khat.expected == 1.0
    assert rbar.passed and rbar.expected == -0.25
    assert ok


@pytest.mark.xfail(strict=True, reason="printed fixture items with documented typos and table findings")
def test_criterion_5_every_printed_item_three_way(fixture_reports):
    assert all(r.passed for r in fixture_reports.values())


def test_criterion_5_disagreements_are_the_documented_ones(fixture_reports):
    for name, rep in fixture_reports.items():
        bad = {x.item for x in rep.records if not x.passed}
        assert bad == KNOWN_FIXTURE_DISAGREEMENTS[name], name


def test_criterion_6_degenerate_limit(verdict):
    hyp, counter = degenerate_suite(tol=1e-6)
    ok_h = hyp.hypothesis and hyp.converged and not hyp.diverged and len(hyp.series) == 5
    ok_h = ok_h and all(s.bounded and s.spread < 1e-6 for s in hyp.series)
    ok_c = (not counter.hypothesis) and counter.diverged
    worst = max(s.spread for s in hyp.series)
    bad = [s.item for s in counter.series if not (s.converged and s.continuous)]
    verdict(6, ok_h and ok_c, f"items (1)-(5) bounded and Cauchy (max tail spread {worst:.1e}); "
                              f"counterexample diverges on {len(bad)} item(s)")
    assert ok_h
    assert ok_c


def test_criterion_7_deterministic_report(verdict, tmp_path):
    bodies = []
    for k in range(2):
        out = tmp_path / f"r{k}.json"
        code = main(["verify", "--suite", "all", "--seed", "11", "--n", "2", "--out", str(out)])
        assert code in (0, 1)
        bodies.append(json.loads(out.read_text()))
    same_text = json.dumps(bodies[0]["body"], sort_keys=True) == json.dumps(bodies[1]["body"], sort_keys=True)
    same_hash = bodies[0]["meta"]["body_sha256"] == bodies[1]["meta"]["body_sha256"]
    ok = same_text and same_hash
    verdict(7, ok, f"two runs with seed 11, body sha256 {bodies[0]['meta']['body_sha256'][:16]}... "
                   f"{'identical' if ok else 'differ'}")
    assert ok
