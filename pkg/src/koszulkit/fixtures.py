"""Named space-times M1 to M4 with three-way checks of their component tables.

Every printed item is evaluated three ways on the same fields: the printed
specialisation (``fixture_items``), the general table it specialises
(``CATALOG``) and the definitional pipeline on the assembled product.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from .connections import Kind, ProductStructure
from .degenerate import ProbeResult, hypothesis_holds, probe_manifold
from .errors import UnknownFixture
from .manifold import Chart, MetricField, VectorField
from .products import (LiftedField, MultiplyWarpedSpec, ProductManifold, Tag, TwistedSpec,
                       build_kasner, build_multiply_warped, build_twisted, lift, lift_structure)
from .products.catalog import CATALOG, Arg, CatalogKey, Context, Family, Obj, evaluate
from .products.fixture_items import FIXTURE_TABLES
from .sampling import Instance, random_field, random_reflection
from .verify import _Oracle, _pick, case_signature, tag_tuples, within

__all__ = ["FixtureParams", "FixtureRecord", "HeadlineCheck", "FixtureReport", "FIXTURES",
           "fixture_names", "build_fixture", "run_fixture", "headline_checks", "component"]


# fiber factors (chart coordinates, metric rows) by dimension and position
_FIBER_METRICS = {
    1: [["1+a^2/3"]],
    2: [["2+b/2", "a/4"], ["a/4", "1+a^2/5"]],
    3: [["1+b^2/4", "a/5", "0"], ["a/5", "2+c/3", "0"], ["0", "0", "1+a^2/5"]],
}
_FIBER_POINT = (0.3, -0.2, 0.4)


@dataclass(frozen=True)
class FixtureParams:
    """Parameter bindings of one named fixture.

    ``warping`` is b(t) for M1 and b(t, fiber coordinates) for M4; ``phi`` and
    ``exponents`` give the Kasner warpings phi^{p_j}.  ``j_base`` is the
    constant J_I = +-1 and ``j_fiber`` is "reflection" or "identity".
    """

    name: str
    t: float
    fiber_dims: tuple[int, ...]
    warping: Optional[str] = None
    phi: Optional[str] = None
    exponents: tuple[float, ...] = ()
    j_base: float = 1.0
    j_fiber: str = "reflection"
    seed: int = 0

    def with_bindings(self, **kw) -> "FixtureParams":
        kw = {k: (tuple(v) if isinstance(v, list) else v) for k, v in kw.items() if v is not None}
        unknown = set(kw) - set(self.__dataclass_fields__)
        if unknown:
            raise UnknownFixture(f"unknown parameter {sorted(unknown)[0]!r} for fixture {self.name}")
        return replace(self, **kw)


FIXTURES: dict[str, FixtureParams] = {
    "M1": FixtureParams("M1", t=0.5, fiber_dims=(3,), warping="t^2"),
    "M2": FixtureParams("M2", t=0.7, fiber_dims=(1, 2), phi="t", exponents=(0.5, 2.0)),
    "M3": FixtureParams("M3", t=0.7, fiber_dims=(1, 2, 2), phi="t", exponents=(0.5, 1.5, 2.0)),
    "M4": FixtureParams("M4", t=0.5, fiber_dims=(3,), warping="t^2*(2+a^2+b*c)"),
}


def fixture_names() -> list[str]:
    return list(FIXTURES)


def params_for(name: str, **bindings) -> FixtureParams:
    if name not in FIXTURES:
        raise UnknownFixture(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")
    return FIXTURES[name].with_bindings(**bindings)


def _fiber(j: int, d: int) -> tuple[Chart, MetricField]:
    names = [f"{'abc'[k]}{j}" for k in range(d)] if j else list("abc"[:d])
    rows = _FIBER_METRICS[d]
    if j:
        rename = {"abc"[k]: names[k] for k in range(d)}
        rows = [["".join(rename.get(ch, ch) for ch in e) for e in row] for row in rows]
    chart = Chart(tuple(names), ((-2.0, 2.0),) * d, name=f"F{j or ''}")
    return chart, MetricField(chart, tuple(tuple(r) for r in rows))


def build_fixture(p: FixtureParams) -> tuple[ProductManifold, np.ndarray]:
    """The product manifold and evaluation point of a fixture."""
    base_chart = Chart(("t",), ((0.0, 1.0 if p.name == "M4" else 10.0),), name="I")
    base = (base_chart, MetricField.diagonal(base_chart, ["-1"]))
    if p.name == "M1":
        M = build_multiply_warped(MultiplyWarpedSpec(base, (_fiber(0, p.fiber_dims[0]),), (p.warping,)))
    elif p.name in ("M2", "M3"):
        if len(p.exponents) != len(p.fiber_dims):
            raise UnknownFixture(f"{p.name} needs one exponent per fiber ({len(p.fiber_dims)})")
        M = build_kasner(base, p.phi, p.exponents, [_fiber(j, d) for j, d in enumerate(p.fiber_dims, 1)])
    elif p.name == "M4":
        M = build_twisted(TwistedSpec(base, _fiber(0, p.fiber_dims[0]), p.warping))
    else:
        raise UnknownFixture(p.name)
    x = np.concatenate([[p.t]] + [list(_FIBER_POINT[:d]) for d in p.fiber_dims])
    M.chart.check(x)
    return M, x


def dt_field(M: ProductManifold) -> LiftedField:
    return lift(M, VectorField(M.factors[0][0], ("1",)), Tag(0))


def _instance(p: FixtureParams, M: ProductManifold, x: np.ndarray, p_where: str, l: Optional[int],
              with_j: bool, pool_size: int = 4) -> Instance:
    rng = np.random.default_rng(p.seed)
    pools = {0: [dt_field(M)]}
    for t in range(1, len(M.factors)):
        pools[t] = [lift(M, random_field(M.factors[t][0], rng), Tag(t)) for _ in range(pool_size)]
    P = None
    if p_where == "base":
        P = dt_field(M)
    elif p_where == "fiber":
        P = lift(M, random_field(M.factors[l][0], rng), Tag(l))
    J = None
    if with_j:
        parts = [ProductStructure.diagonal(M.factors[0][0], [p.j_base])]
        for t in range(1, len(M.factors)):
            fc, fm = M.factors[t]
            parts.append(ProductStructure.identity(fc) if p.j_fiber == "identity"
                         else random_reflection(fc, fm, rng, x[M.slices[t]]))
        J = lift_structure(M, parts)
    return Instance(M, x, pools, P, J, p.seed)


def _rel(err: float, ref: float) -> float:
    return err / abs(ref) if ref else (0.0 if err == 0 else math.inf)


@dataclass
class FixtureRecord:
    fixture: str
    key: str
    item: str
    pattern: str
    case: str
    catalog_item: Optional[str]
    printed: float
    catalog: Optional[float]
    oracle: float
    abs_err: float
    rel_err: float
    passed: bool

    def to_dict(self) -> dict:
        return asdict(self)


def _check_table(p: FixtureParams, fam: Family, M: ProductManifold, x: np.ndarray,
                 tol_rel: float, tol_abs: float) -> list[FixtureRecord]:
    out: list[FixtureRecord] = []
    ls: Sequence[Optional[int]] = [None]
    if fam.p_where == "fiber":
        ls = list(range(1, M.n_fibers + 1))
    for l in ls:
        inst = _instance(p, M, x, fam.p_where, l, fam.connection is Kind.AP)
        rng = np.random.default_rng(p.seed + 7919 * (l or 0) + 1)
        ora = _Oracle(inst)
        ctx = Context(M, x, inst.P, inst.J)
        p_loc = None if inst.P is None else inst.P.tag
        for shape in sorted(fam.shapes()):
            for tags in tag_tuples(shape, M.n_fibers, l, rng):
                hits = fam.matches(tags, l)
                if not hits:
                    continue
                fields = _pick(inst, tags, rng)
                jets = [f.field.jet(x) for f in fields]
                args = [Arg(f.tag, j) for f, j in zip(fields, jets)]
                oval = ora.value(fam.connection, fam.obj, jets)
                key = CatalogKey(fam.connection, fam.obj, fam.product, p_loc, tags)
                general = CATALOG.lookup(key)
                cval, clabel = None, None
                if general:
                    gf, gi, gp, genv = general[0]
                    cval, clabel = evaluate(gf, gi, gp, genv, ctx, args), gf.label(gi)
                for item, pat, env in hits:
                    pval = evaluate(fam, item, pat, env, ctx, args)
                    vals = [pval] + ([cval] if cval is not None else [])
                    err = max(abs(v - oval) for v in vals)
                    ok = all(within(v, oval, tol_rel, tol_abs) for v in vals)
                    out.append(FixtureRecord(p.name, str(key), fam.label(item), pat.text(),
                                             case_signature(tags, p_loc), clabel, float(pval),
                                             None if cval is None else float(cval), float(oval),
                                             float(err), float(_rel(err, oval)), bool(ok)))
    return out


# single components and headline values -------------------------------------------------

@dataclass
class HeadlineCheck:
    label: str
    expected: float
    printed: float
    catalog: Optional[float]
    oracle: float
    passed: bool

    def to_dict(self) -> dict:
        return asdict(self)


def component(p: FixtureParams, connection: str, obj: str, roles: str, p_where: str = "base",
              l: Optional[int] = None, per_unit: Optional[tuple[int, int]] = None
              ) -> tuple[float, Optional[float], float]:
    """(printed, general catalog, oracle) values of one component.

    ``roles`` lists arguments as "t" (d/dt) or a fiber index digit; fiber
    arguments use the coordinate field of their first fiber coordinate.
    ``per_unit`` names two argument positions whose unwarped fiber metric
    divides every value.
    """
    kind = Kind(connection)
    M, x = build_fixture(p)
    inst = _instance(p, M, x, p_where if kind in (Kind.SSM, Kind.SSNM) else "none", l, kind is Kind.AP)
    fields = []
    for r in roles:
        if r == "t":
            fields.append(dt_field(M))
        else:
            t = int(r)
            fields.append(lift(M, VectorField.coordinate(M.factors[t][0], 0), Tag(t)))
    tags = tuple(f.tag for f in fields)
    jets = [f.field.jet(x) for f in fields]
    args = [Arg(f.tag, j) for f, j in zip(fields, jets)]
    ctx = Context(M, x, inst.P, inst.J)
    key = CatalogKey(kind, obj, M.kind, None if inst.P is None else inst.P.tag, tags)
    lval = None if key.p_location is None or key.p_location.is_base else key.p_location.index

    def first(cat_hits):
        if not cat_hits:
            return None
        f, it, pat, env = cat_hits[0]
        return evaluate(f, it, pat, env, ctx, args)
    printed_hits = []
    for fam in FIXTURE_TABLES[p.name].find(key):
        printed_hits.extend((fam, it, pat, env) for it, pat, env in fam.matches(tags, lval))
    printed = first(printed_hits)
    catalog = first(CATALOG.lookup(key))
    oracle = _Oracle(inst).value(kind, Obj(obj), jets)
    unit = 1.0
    if per_unit is not None:
        unit = ctx.g(args[per_unit[0]], args[per_unit[1]])
    scale = lambda v: None if v is None else float(v) / unit
    return scale(printed), scale(catalog), scale(oracle)


def _headline(label, expected, vals, tol_rel) -> HeadlineCheck:
    printed, catalog, oracle = vals
    ok = all(v is not None and within(v, expected, tol_rel, 1e-12) for v in (printed, catalog, oracle))
    return HeadlineCheck(label, expected, printed, catalog, oracle, ok)


def headline_checks(tol_rel: float = 1e-8) -> list[HeadlineCheck]:
    """Reference values of the M1 family computed by hand from the warping."""
    m1 = FIXTURES["M1"]
    lin = m1.with_bindings(warping="t", t=2.0)
    sq = m1.with_bindings(warping="t^2", t=0.5)
    ident = sq.with_bindings(j_fiber="identity", j_base=1.0)
    return [
        _headline("M1 b=t t=2 ssm K(V,dt,W)/g_F(V,W)", -2.0,
                  component(lin, "ssm", "koszul", "1t1", per_unit=(0, 2)), tol_rel),
        _headline("M1 ssnm K(dt,dt,dt)", 1.0, component(sq, "ssnm", "koszul", "ttt"), tol_rel),
        _headline("M1 b=t^2 t=0.5 ssm R(dt,V,W,dt)/g_F(V,W)", -0.25,
                  component(sq, "ssm", "curvature", "t11t", per_unit=(1, 2)), tol_rel),
        _headline("M1 b=t^2 t=0.5 ssnm R(V,dt,W,dt)/g_F(V,W)", 1.0,
                  component(sq, "ssnm", "curvature", "1t1t", per_unit=(0, 2)), tol_rel),
        _headline("M1 b=t^2 t=0.5 J=id ap R(dt,V,dt,W)/g_F(V,W)", 0.5,
                  component(ident, "ap", "curvature", "t1t1", per_unit=(1, 3)), tol_rel),
    ]


# fixture runs -------------------------------------------------------------------

@dataclass
class FixtureReport:
    params: FixtureParams
    records: list[FixtureRecord] = field(default_factory=list)
    degenerate: Optional[ProbeResult] = None
    degenerate_skipped: Optional[str] = None

    @property
    def passed(self) -> bool:
        ok = all(r.passed for r in self.records)
        if self.degenerate is not None:
            ok = ok and self.degenerate.converged and not self.degenerate.diverged
        return ok

    def to_dict(self) -> dict:
        return {
            "fixture": self.params.name,
            "params": asdict(self.params),
            "cases": len(self.records),
            "failed": sum(not r.passed for r in self.records),
            "not_in_catalog": sum(r.catalog is None for r in self.records),
            "passed": self.passed,
            "records": [r.to_dict() for r in self.records],
            "degenerate": None if self.degenerate is None else self.degenerate.to_dict(),
            "degenerate_skipped": self.degenerate_skipped,
        }


def _degenerate_section(p: FixtureParams, M: ProductManifold, x: np.ndarray,
                        tol: float) -> tuple[Optional[ProbeResult], Optional[str]]:
    x0 = x.copy()
    x0[0] = 0.0
    bj = M.warping(1).jet(x0)
    if abs(float(bj.val)) > 1e-12:
        return None, f"twisting {p.warping!r} does not vanish at t=0 (b={float(bj.val):.6g})"
    if not hypothesis_holds(M, x0):
        return None, (f"hypothesis db|_(b=0) = 0 unmet for twisting {p.warping!r}: "
                      f"|db| = {float(np.max(np.abs(bj.grad))):.6g} at t=0")
    fchart = M.factors[1][0]
    base = [dt_field(M), lift(M, VectorField(M.factors[0][0], ("1+t/2",)), Tag(0))]
    rng = np.random.default_rng(p.seed + 31)
    fib = [lift(M, random_field(fchart, rng), Tag(1)) for _ in range(3)]
    return probe_manifold(M, base, fib, x0, p.warping, tol=tol), None


def run_fixture(name: str, tol_rel: float = 1e-8, tol_abs: float = 1e-10,
                degenerate_tol: float = 1e-6, **bindings) -> FixtureReport:
    """Every printed item of fixture ``name`` against the general catalog and the oracle."""
    p = params_for(name, **bindings)
    M, x = build_fixture(p)
    rep = FixtureReport(p)
    for fam in FIXTURE_TABLES[p.name].families:
        rep.records.extend(_check_table(p, fam, M, x, tol_rel, tol_abs))
    if p.name == "M4":
        rep.degenerate, rep.degenerate_skipped = _degenerate_section(p, M, x, degenerate_tol)
    return rep
