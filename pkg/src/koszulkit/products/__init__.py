"""Multiply warped and twisted products, lifts and factor-intrinsic evaluation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .. import expr as ex
from ..connections import (Kind, ProductStructure, ap_koszul_jet, basis_jet,
                           koszul_jet, ssm_koszul_jet, ssnm_koszul_jet)
from ..curvature import (ap_riemann_jet, riemann_jet, ssm_riemann_jet,
                         ssnm_riemann_jet)
from ..errors import SpecMismatch, UnknownFactor
from ..manifold import (Block, Chart, MetricField, ProductBlock, ScalarField,
                        VectorField)

__all__ = [
    "Tag", "BASE", "fiber", "MultiplyWarpedSpec", "TwistedSpec", "ProductManifold",
    "LiftedField", "build_multiply_warped", "build_twisted", "build_kasner", "lift",
    "factor_koszul", "factor_riemann", "lift_structure",
]


@dataclass(frozen=True, order=True)
class Tag:
    """Factor label: index 0 is the base, index j >= 1 is fiber j."""

    index: int

    @property
    def is_base(self) -> bool:
        return self.index == 0

    def __str__(self) -> str:
        return "B" if self.index == 0 else f"F{self.index}"

    @classmethod
    def parse(cls, s: Union[str, "Tag", int]) -> "Tag":
        if isinstance(s, Tag):
            return s
        if isinstance(s, int):
            return cls(s)
        t = s.strip()
        if t in ("B", "Base", "base"):
            return cls(0)
        if t == "F":
            return cls(1)
        if t.startswith("F") and t[1:].isdigit():
            return cls(int(t[1:]))
        raise UnknownFactor(f"unknown factor tag {s!r}")


BASE = Tag(0)


def fiber(j: int) -> Tag:
    return Tag(j)




@dataclass(frozen=True)
class MultiplyWarpedSpec:
    base: tuple[Chart, MetricField]
    fibers: tuple[tuple[Chart, MetricField], ...]
    warpings: tuple  # ScalarField on the base chart, Expr or text


@dataclass(frozen=True)
class TwistedSpec:
    base: tuple[Chart, MetricField]
    fiber: tuple[Chart, MetricField]
    twisting: object  # Expr or text over the product coordinates


@dataclass(frozen=True, eq=False)
class ProductManifold:
    kind: str  # "warped" or "twisted"
    chart: Chart
    metric: MetricField
    cometric: ProductBlock
    factor_map: tuple[Tag, ...]
    factors: tuple[tuple[Chart, MetricField], ...]  # base first
    warpings: tuple[ScalarField, ...]  # on the product chart, one per fiber
    slices: tuple[slice, ...]

    @property
    def n_fibers(self) -> int:
        return len(self.factors) - 1

    @property
    def tags(self) -> tuple[Tag, ...]:
        return tuple(Tag(i) for i in range(len(self.factors)))

    def factor(self, tag) -> tuple[Chart, MetricField]:
        t = Tag.parse(tag)
        if not 0 <= t.index < len(self.factors):
            raise UnknownFactor(f"no factor {t} in a product with {self.n_fibers} fibers")
        return self.factors[t.index]

    def block(self, tag) -> slice:
        t = Tag.parse(tag)
        self.factor(t)
        return self.slices[t.index]

    def project(self, x: np.ndarray, tag) -> np.ndarray:
        return np.asarray(x, dtype=float)[self.block(tag)]

    def warping(self, j: int = 1) -> ScalarField:
        if not 1 <= j <= self.n_fibers:
            raise UnknownFactor(f"no fiber {j}")
        return self.warpings[j - 1]

    def lift(self, v: VectorField, tag) -> "LiftedField":
        return lift(self, v, tag)


@dataclass(frozen=True, eq=False)
class LiftedField:
    field: VectorField
    tag: Tag
    factor_field: VectorField

    @property
    def chart(self) -> Chart:
        return self.field.chart

    def jet(self, x):
        return self.field.jet(x)


def _as_scalar(chart: Chart, f) -> ScalarField:
    if isinstance(f, ScalarField):
        extra = ex.symbols(f.expr) - set(chart.coord_names)
        if extra:
            raise SpecMismatch(f"function references coordinates {sorted(extra)} outside {chart.coord_names}")
        return ScalarField(chart, f.expr)
    if isinstance(f, ex.Expr):
        extra = ex.symbols(f) - set(chart.coord_names)
        if extra:
            raise SpecMismatch(f"function references coordinates {sorted(extra)} outside {chart.coord_names}")
        return ScalarField(chart, f)
    try:
        return ScalarField(chart, ex.parse_expr(str(f), chart))
    except Exception as err:
        if isinstance(err, SpecMismatch):
            raise
        raise SpecMismatch(f"cannot read function {f!r} on chart {chart.coord_names}: {err}") from err


def _assemble(kind: str, base, fibers, weights_on: Sequence[ScalarField],
              chart: Chart) -> ProductManifold:
    n = chart.dim
    entries = [[ex.Num(0.0)] * n for _ in range(n)]
    slices = []
    tags: list[Tag] = []
    start = 0
    for idx, (fchart, fmetric) in enumerate([base, *fibers]):
        stop = start + fchart.dim
        slices.append(slice(start, stop))
        tags.extend([Tag(idx)] * fchart.dim)
        for a in range(fchart.dim):
            for c in range(fchart.dim):
                e = fmetric.entries[a][c].expr
                if idx == 0:
                    entries[start + a][start + c] = e
                else:
                    entries[start + a][start + c] = ex.mul(ex.Pow(weights_on[idx - 1].expr, ex.Num(2.0)), e)
        start = stop
    metric = MetricField(chart, tuple(tuple(r) for r in entries))
    blocks = [Block(0, slices[0].stop)]
    for j, b in enumerate(weights_on, start=1):
        sl = slices[j]
        w = ScalarField(chart, ex.Pow(b.expr, ex.Num(2.0)))
        blocks.append(Block(sl.start, sl.stop, _FactorMetricOnProduct(fibers[j - 1][1], sl), w))
    return ProductManifold(kind, chart, metric, ProductBlock(tuple(blocks)), tuple(tags),
                           (base, *fibers), tuple(weights_on), tuple(slices))


@dataclass(frozen=True, eq=False)
class _FactorMetricOnProduct:
    """A factor metric read at the projection of a product point."""

    metric: MetricField
    block: slice

    def jet(self, x):
        return self.metric.jet(np.asarray(x, dtype=float)[self.block])


def _product_chart(base, fibers) -> Chart:
    names: list[str] = []
    dom: list = []
    for ch, _ in [base, *fibers]:
        names.extend(ch.coord_names)
        dom.extend(ch.domain)
    if len(set(names)) != len(names):
        raise SpecMismatch(f"factor charts share coordinate names: {names}")
    return Chart(tuple(names), tuple(dom), name="product")


def _check_factor(f) -> tuple[Chart, MetricField]:
    ch, g = f
    if g.chart != ch:
        raise SpecMismatch("factor metric is not on the factor chart")
    return ch, g


def build_multiply_warped(spec: MultiplyWarpedSpec) -> ProductManifold:
    """B x_{b_1} F_1 x ... x_{b_m} F_m with metric g_B + sum_j b_j^2 g_{F_j}."""
    base = _check_factor(spec.base)
    fibers = tuple(_check_factor(f) for f in spec.fibers)
    if len(spec.warpings) != len(fibers):
        raise SpecMismatch(f"{len(spec.warpings)} warping functions for {len(fibers)} fibers")
    if not fibers:
        raise SpecMismatch("a product needs at least one fiber")
    chart = _product_chart(base, fibers)
    on_base = [_as_scalar(base[0], w) for w in spec.warpings]
    return _assemble("warped", base, fibers, [ScalarField(chart, b.expr) for b in on_base], chart)


def build_twisted(spec: TwistedSpec) -> ProductManifold:
    """B x_b F with metric g_B + b^2 g_F, b a function on the product."""
    base = _check_factor(spec.base)
    fib = _check_factor(spec.fiber)
    chart = _product_chart(base, (fib,))
    return _assemble("twisted", base, (fib,), [_as_scalar(chart, spec.twisting)], chart)


def build_kasner(base: tuple[Chart, MetricField], phi, exponents: Sequence[float],
                 fibers: Sequence[tuple[Chart, MetricField]]) -> ProductManifold:
    """Generalized Kasner product with warpings phi^{p_j}; phi > 0 is required."""
    phi_f = _as_scalar(base[0], phi)
    warps = [ex.Pow(phi_f.expr, ex.Num(float(p))) for p in exponents]
    return build_multiply_warped(MultiplyWarpedSpec(base, tuple(fibers), tuple(warps)))


def lift(manifold: ProductManifold, v: VectorField, tag) -> LiftedField:
    """Embed a factor field into the product; zero components off the factor."""
    t = Tag.parse(tag)
    fchart, _ = manifold.factor(t)
    sl = manifold.block(t)
    allowed = set(fchart.coord_names)
    if v.chart == fchart:
        comps = [ex.Num(0.0)] * manifold.chart.dim
        for a, c in enumerate(v.components):
            comps[sl.start + a] = c.expr
        field = VectorField(manifold.chart, tuple(comps))
        return LiftedField(field, t, v)
    if v.chart == manifold.chart:
        for k, c in enumerate(v.components):
            inside = sl.start <= k < sl.stop
            if not inside and not c.is_zero:
                raise SpecMismatch(f"component {manifold.chart.coord_names[k]} lies outside factor {t}")
            bad = ex.symbols(c.expr) - allowed
            if bad:
                raise SpecMismatch(f"a field tagged {t} depends on {sorted(bad)}")
        local = VectorField(fchart, tuple(v.components[k].expr for k in range(sl.start, sl.stop)))
        return LiftedField(v, t, local)
    raise SpecMismatch(f"field chart {v.chart.coord_names} is neither factor {t} nor the product")


def lift_structure(manifold: ProductManifold, parts: Sequence[ProductStructure]) -> ProductStructure:
    """Block-diagonal J = (J_B, J_F1, ...) on the product chart."""
    if len(parts) != len(manifold.factors):
        raise SpecMismatch(f"{len(parts)} structures for {len(manifold.factors)} factors")
    n = manifold.chart.dim
    rows = [[ex.Num(0.0)] * n for _ in range(n)]
    for idx, part in enumerate(parts):
        fchart, _ = manifold.factors[idx]
        if part.chart != fchart:
            raise SpecMismatch(f"structure {idx} is not on factor chart {fchart.coord_names}")
        sl = manifold.slices[idx]
        for a in range(fchart.dim):
            for c in range(fchart.dim):
                rows[sl.start + a][sl.start + c] = part.matrix[a][c].expr
    return ProductStructure(manifold.chart, tuple(tuple(r) for r in rows))


# factor-intrinsic quantities ---------------------------------------------------

def _factor_setup(manifold: ProductManifold, tag, args: Sequence[LiftedField], p, P, J):
    t = Tag.parse(tag)
    fchart, fmetric = manifold.factor(t)
    x = manifold.chart.point(p)
    xf = manifold.project(x, t)
    for a in args:
        if a.tag != t:
            raise SpecMismatch(f"argument tagged {a.tag} passed to factor {t}")
    jets = [a.factor_field.jet(xf) for a in args]
    G = fmetric.jet(xf)
    Pj = None
    if P is not None:
        Pj = P.factor_field.jet(xf) if P.tag == t else basis_jet(fchart.dim)[0] * 0.0
    Jj = J.jet(xf) if J is not None else None
    return fchart, fmetric, xf, G, jets, Pj, Jj


def _factor_form(kind: Kind, G, Pj, Jj):
    kind = Kind(kind)
    if kind is Kind.PLAIN:
        return lambda a, b, c: koszul_jet(G, a, b, c)
    if kind is Kind.SSM:
        return lambda a, b, c: ssm_koszul_jet(G, Pj, a, b, c)
    if kind is Kind.SSNM:
        return lambda a, b, c: ssnm_koszul_jet(G, Pj, a, b, c)
    return lambda a, b, c: ap_koszul_jet(G, Jj, a, b, c)


def factor_koszul(manifold: ProductManifold, tag, args: Sequence[LiftedField], p,
                  kind: Kind = Kind.PLAIN, P: Optional[LiftedField] = None,
                  J: Optional[ProductStructure] = None) -> float:
    """Koszul form of one factor at the projected point.

    For the semi-symmetric kinds P is projected onto the factor (zero if it
    lives on another factor); for the almost-product kind J is the factor's
    own structure on the factor chart.
    """
    _, _, _, G, jets, Pj, Jj = _factor_setup(manifold, tag, args, p, P, J)
    return float(_factor_form(kind, G, Pj, Jj)(*jets).val)


def factor_riemann(manifold: ProductManifold, tag, args: Sequence[LiftedField], p,
                   kind: Kind = Kind.PLAIN, P: Optional[LiftedField] = None,
                   J: Optional[ProductStructure] = None) -> float:
    """Curvature of one factor (non-degenerate there) at the projected point."""
    from ..manifold import ExactInverse
    _, fmetric, xf, G, jets, Pj, Jj = _factor_setup(manifold, tag, args, p, P, J)
    gplus = ExactInverse().matrix(fmetric, xf, G.val)
    kind = Kind(kind)
    if kind is Kind.PLAIN:
        return riemann_jet(G, gplus, *jets)
    if kind is Kind.SSM:
        return ssm_riemann_jet(G, gplus, Pj, *jets)
    if kind is Kind.SSNM:
        return ssnm_riemann_jet(G, gplus, Pj, *jets)
    return ap_riemann_jet(G, Jj, gplus, *jets)


# register the closed-form tables
from . import twisted_items, warped_items  # noqa: E402,F401
