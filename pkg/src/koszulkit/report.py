"""Verification runs and their machine-readable reports.

A report has a deterministic ``body`` (records, summaries, worst offenders,
findings) and a ``meta`` block holding the wall-clock time and the SHA-256
of the canonical body text.  Identical seeds and flags give identical bodies.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .degenerate import ProbeResult, degenerate_suite
from .fixtures import FixtureReport, headline_checks, run_fixture, fixture_names
from .identities import curvature_identities, koszul_identities, second_oracle
from .verify import CaseRecord, catalog_suite, findings

__all__ = ["SUITES", "VerifyReport", "run_verify", "canonical_json", "degenerate_records",
           "fixture_records"]

SUITES = ("identities", "catalog", "fixtures", "degenerate-limit")


def _clean(obj):
    """Replace non-finite floats by strings so the output is strict JSON."""
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else ("nan" if math.isnan(obj) else ("inf" if obj > 0 else "-inf"))
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def canonical_json(obj) -> str:
    return json.dumps(_clean(obj), sort_keys=True, separators=(",", ":"), allow_nan=False)


def fixture_records(rep: FixtureReport, seed: int) -> list[CaseRecord]:
    """Printed-versus-oracle rows; ``passed`` also requires the general catalog to agree."""
    return [CaseRecord("fixtures", r.key, r.item, r.pattern, r.case, seed, r.oracle, r.printed,
                       r.abs_err, r.rel_err, r.passed) for r in rep.records]


def degenerate_records(results: Sequence[ProbeResult]) -> list[CaseRecord]:
    """One row per probed item: the last value along the path against the degenerate-point value.

    Where the vanishing hypothesis holds the row passes iff the series is
    bounded, Cauchy and continuous at b = 0.  Counterexample rows record the
    behaviour and pass once it has been measured.
    """
    out = []
    for res in results:
        if res.skipped:
            continue
        for s in res.series:
            ok = (s.converged and s.continuous) if res.hypothesis else True
            rel = s.limit_gap / abs(s.limit_value) if s.limit_value else (0.0 if s.limit_gap == 0 else math.inf)
            case = ("hypothesis" if res.hypothesis else "counterexample") + (
                "" if (s.converged and s.continuous) else ":diverged")
            out.append(CaseRecord("degenerate-limit", res.twisting, s.item, s.args, case, 0,
                                  s.limit_value, s.values[-1], s.limit_gap, rel, ok))
    return out


@dataclass
class VerifyReport:
    suites: list[str]
    seed: int
    n: int
    tol_rel: float
    tol_abs: float
    records: list[CaseRecord] = field(default_factory=list)
    fixtures: list[dict] = field(default_factory=list)
    headline: list[dict] = field(default_factory=list)
    degenerate: list[dict] = field(default_factory=list)
    wall_clock_s: float = 0.0

    @property
    def passed(self) -> bool:
        return (all(r.passed for r in self.records) and all(h["passed"] for h in self.headline)
                and all(f["passed"] for f in self.fixtures))

    def summaries(self) -> dict[str, dict]:
        out: dict[str, dict] = {}
        for r in self.records:
            s = out.setdefault(r.suite, {"cases": 0, "passed": 0, "failed": 0,
                                         "max_abs_err": 0.0, "max_rel_err": 0.0})
            s["cases"] += 1
            s["passed" if r.passed else "failed"] += 1
            s["max_abs_err"] = max(s["max_abs_err"], r.abs_err)
            s["max_rel_err"] = max(s["max_rel_err"], r.rel_err)
        return out

    def worst_offenders(self, k: int = 10) -> list[dict]:
        bad = [r for r in self.records if not r.passed]
        bad.sort(key=lambda r: (-r.abs_err, r.suite, r.key, r.item, r.seed))
        return [r.to_dict() for r in bad[:k]]

    def body(self) -> dict:
        found = findings([r for r in self.records if r.suite == "catalog"])
        return {
            "config": {"suites": self.suites, "seed": self.seed, "n": self.n,
                       "tol_rel": self.tol_rel, "tol_abs": self.tol_abs},
            "passed": self.passed,
            "summaries": self.summaries(),
            "worst_offenders": self.worst_offenders(),
            "findings": [f.to_dict() for f in found],
            "headline": self.headline,
            "fixtures": self.fixtures,
            "degenerate": self.degenerate,
            "records": [r.to_dict() for r in self.records],
        }

    def body_text(self) -> str:
        return canonical_json(self.body())

    def to_json(self) -> str:
        body = self.body_text()
        meta = {"wall_clock_s": self.wall_clock_s,
                "body_sha256": hashlib.sha256(body.encode()).hexdigest()}
        return '{"body":' + body + ',"meta":' + canonical_json(meta) + "}\n"

    def write(self, out: Optional[str | Path], csv_path: Optional[str | Path] = None) -> None:
        if out is not None:
            Path(out).write_text(self.to_json())
        if csv_path is not None:
            cols = list(CaseRecord.__dataclass_fields__)
            with open(csv_path, "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(cols)
                for r in self.records:
                    d = r.to_dict()
                    w.writerow([repr(d[c]) if isinstance(d[c], float) else d[c] for c in cols])


def run_verify(suites: Sequence[str], seed: int = 0, n: int = 20, tol_rel: float = 1e-8,
               tol_abs: float = 1e-10, fixture_bindings: Optional[dict[str, dict]] = None) -> VerifyReport:
    """Run the named suites ("all" expands to every suite) and collect one report.

    ``n`` is the number of random instances per identity check and per
    catalog family.  ``fixture_bindings`` maps fixture names to parameter
    overrides; by default every named fixture runs with its defaults.
    """
    names = list(SUITES) if "all" in suites else [s for s in SUITES if s in suites]
    rep = VerifyReport(names, seed, n, tol_rel, tol_abs)
    t0 = time.perf_counter()
    if "identities" in names:
        rep.records += koszul_identities(n, seed)
        rep.records += curvature_identities(n, seed)
        rep.records += second_oracle(n, seed, tol_rel, tol_abs)
    if "catalog" in names:
        rep.records += catalog_suite(n, seed, tol_rel, tol_abs)
    if "fixtures" in names:
        runs = fixture_bindings or {name: {} for name in fixture_names()}
        for label, bind in runs.items():
            bind = dict(bind)
            base = bind.pop("fixture", label)
            fr = run_fixture(base, tol_rel, tol_abs, seed=seed, **bind)
            rep.records += fixture_records(fr, seed)
            d = fr.to_dict()
            d["label"] = label
            d.pop("records")
            rep.fixtures.append(d)
        rep.headline = [h.to_dict() for h in headline_checks(tol_rel)]
    if "degenerate-limit" in names:
        results = degenerate_suite()
        rep.records += degenerate_records(results)
        rep.degenerate = [r.to_dict() for r in results]
    rep.wall_clock_s = time.perf_counter() - t0
    return rep
