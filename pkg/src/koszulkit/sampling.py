"""Seeded random polynomials, fields, metrics and product instances."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import expr as ex
from .connections import ProductStructure
from .manifold import Chart, MetricField, VectorField
from .products import (LiftedField, MultiplyWarpedSpec, ProductManifold, Tag, TwistedSpec,
                       build_multiply_warped, build_twisted, lift, lift_structure)

__all__ = [
    "random_poly", "random_field", "random_metric", "random_reflection", "chart_of",
    "Instance", "random_warped", "random_twisted",
]

BOX = 0.6  # sampled coordinates lie in (-BOX, BOX)


def _num(v: float) -> ex.Expr:
    return ex.Num(float(round(v, 6)))


def random_poly(names: Sequence[str], rng: np.random.Generator, degree: int = 2,
                scale: float = 0.5, const: float | None = None, density: float = 0.7) -> ex.Expr:
    """Sparse polynomial with coefficients in (-scale, scale)."""
    terms: list[ex.Expr] = []
    c0 = rng.uniform(-scale, scale) if const is None else const
    if c0:
        terms.append(_num(c0))
    for deg in range(1, degree + 1):
        for mono in itertools.combinations_with_replacement(names, deg):
            if rng.random() > density:
                continue
            t: ex.Expr = _num(rng.uniform(-scale, scale))
            for name, grp in itertools.groupby(mono):
                k = len(list(grp))
                s: ex.Expr = ex.Sym(name) if k == 1 else ex.Pow(ex.Sym(name), ex.Num(float(k)))
                t = ex.mul(t, s)
            terms.append(t)
    return ex.sum_exprs(terms)


def chart_of(names: Sequence[str], half_width: float = 10.0) -> Chart:
    return Chart(tuple(names), tuple((-half_width, half_width) for _ in names))


def random_field(chart: Chart, rng: np.random.Generator, degree: int = 2) -> VectorField:
    comps = tuple(random_poly(chart.coord_names, rng, degree, scale=0.8) for _ in chart.coord_names)
    return VectorField(chart, comps)


def random_metric(chart: Chart, rng: np.random.Generator, x: np.ndarray,
                  signs: Sequence[float] | None = None, tries: int = 50) -> MetricField:
    """Symmetric polynomial metric, non-degenerate and well conditioned at ``x``."""
    n = chart.dim
    for _ in range(tries):
        sg = signs if signs is not None else rng.choice([-1.0, 1.0], size=n, p=[0.3, 0.7])
        rows = [[ex.Num(0.0)] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = random_poly(chart.coord_names, rng, 2, scale=0.3, const=float(sg[i]) * rng.uniform(1.0, 1.6))
            for j in range(i + 1, n):
                e = random_poly(chart.coord_names, rng, 2, scale=0.2)
                rows[i][j] = rows[j][i] = e
        g = MetricField(chart, tuple(tuple(r) for r in rows))
        s = np.linalg.svd(g.jet(x).val, compute_uv=False)
        if s.min() > 0.3 and s.max() / s.min() < 30:
            return g
    raise RuntimeError("could not sample a well-conditioned metric")


def random_reflection(chart: Chart, metric: MetricField, rng: np.random.Generator,
                      x: np.ndarray, tries: int = 50) -> ProductStructure:
    """g-reflection J = I - 2 v (g v)^T / g(v, v) for a random constant v; J = +-1 in dimension 1."""
    n = chart.dim
    if n == 1:
        return ProductStructure.diagonal(chart, [float(rng.choice([-1.0, 1.0]))])
    gval = metric.jet(x).val
    for _ in range(tries):
        v = np.round(rng.uniform(-1, 1, n), 3)
        if abs(v @ gval @ v) > 0.3:
            break
    else:
        raise RuntimeError("no non-null direction found")
    ents = [[e.expr for e in row] for row in metric.entries]
    gv = [ex.sum_exprs(ex.mul(ents[a][c], _num(v[c])) for c in range(n)) for a in range(n)]
    vgv = ex.sum_exprs(ex.mul(_num(v[a]), gv[a]) for a in range(n))
    rows = []
    for a in range(n):
        row = []
        for b in range(n):
            term = ex.div(ex.mul(_num(-2.0 * v[a]), gv[b]), vgv)
            row.append(ex.add(ex.Num(1.0 if a == b else 0.0), term))
        rows.append(tuple(row))
    sign = float(rng.choice([-1.0, 1.0]))
    if sign < 0:
        rows = [tuple(ex.neg(e) for e in r) for r in rows]
    return ProductStructure(chart, tuple(rows))


@dataclass
class Instance:
    """A random product with a point, optional P and J, and pools of lifted fields."""

    manifold: ProductManifold
    x: np.ndarray
    pools: dict[int, list[LiftedField]]
    P: Optional[LiftedField] = None
    J: Optional[ProductStructure] = None
    seed: int = 0
    fiber_perm: list[int] = field(default_factory=list)


def _names(prefix: str, d: int) -> list[str]:
    return [f"{prefix}{a}" for a in range(d)]


def _warping(names, rng, x_local, floor=0.3, tries=50) -> ex.Expr:
    chart = chart_of(names)
    from .manifold import ScalarField
    for _ in range(tries):
        c0 = float(rng.choice([-1.0, 1.0]) * rng.uniform(1.0, 2.0))
        e = random_poly(names, rng, 2, scale=0.5, const=c0)
        if abs(float(ScalarField(chart, e).jet(x_local).val)) > floor:
            return e
    raise RuntimeError("could not sample a warping bounded away from zero")


def _finish(manifold: ProductManifold, x: np.ndarray, rng, p_tag: Optional[int], with_j: bool,
            pool_size: int, seed: int) -> Instance:
    pools: dict[int, list[LiftedField]] = {}
    for t, (fchart, _) in enumerate(manifold.factors):
        pools[t] = [lift(manifold, random_field(fchart, rng), Tag(t)) for _ in range(pool_size)]
    P = None
    if p_tag is not None:
        P = lift(manifold, random_field(manifold.factors[p_tag][0], rng), Tag(p_tag))
    J = None
    if with_j:
        parts = [random_reflection(fc, fm, rng, x[manifold.slices[t]])
                 for t, (fc, fm) in enumerate(manifold.factors)]
        J = lift_structure(manifold, parts)
    return Instance(manifold, x, pools, P, J, seed)


def random_warped(seed: int, n_fibers: int = 4, base_dim: int = 2, p_where: str = "none",
                  with_j: bool = False, pool_size: int = 4,
                  fiber_dims: Sequence[int] | None = None) -> Instance:
    """Random multiply warped product; P goes on the base or on fiber 1 when asked."""
    rng = np.random.default_rng(seed)
    if fiber_dims is None:
        # a reflection J on a 2-dimensional fiber has flat almost product curvature, so AP gets a 3
        fiber_dims = [3 if with_j else 2, 2] + [int(rng.integers(1, 3)) for _ in range(n_fibers - 2)]
        fiber_dims = list(rng.permutation(fiber_dims)) if n_fibers >= 2 else [fiber_dims[0]]
    bnames = _names("x", base_dim)
    xb = rng.uniform(-BOX, BOX, base_dim)
    bchart = chart_of(bnames)
    base = (bchart, random_metric(bchart, rng, xb))
    fibers, xs = [], [xb]
    for j, d in enumerate(fiber_dims, start=1):
        names = _names(chr(ord("a") + j - 1), int(d))
        xf = rng.uniform(-BOX, BOX, int(d))
        fc = chart_of(names)
        fibers.append((fc, random_metric(fc, rng, xf)))
        xs.append(xf)
    warps = tuple(_warping(bnames, rng, xb) for _ in fibers)
    M = build_multiply_warped(MultiplyWarpedSpec(base, tuple(fibers), warps))
    x = np.concatenate(xs)
    p_tag = {"none": None, "base": 0, "fiber": 1}[p_where]
    return _finish(M, x, rng, p_tag, with_j, pool_size, seed)


def random_twisted(seed: int, base_dim: int = 2, fiber_dim: int | None = None, p_where: str = "none",
                   with_j: bool = False, pool_size: int = 4) -> Instance:
    """Random twisted product with a twisting function of all coordinates."""
    rng = np.random.default_rng(seed)
    fdim = int(fiber_dim if fiber_dim is not None else (3 if with_j else 2))
    bnames, fnames = _names("x", base_dim), _names("a", fdim)
    xb = rng.uniform(-BOX, BOX, base_dim)
    xf = rng.uniform(-BOX, BOX, fdim)
    bchart, fchart = chart_of(bnames), chart_of(fnames)
    base = (bchart, random_metric(bchart, rng, xb))
    fib = (fchart, random_metric(fchart, rng, xf))
    x = np.concatenate([xb, xf])
    b = _warping(bnames + fnames, rng, x)
    M = build_twisted(TwistedSpec(base, fib, b))
    p_tag = {"none": None, "base": 0, "fiber": 1}[p_where]
    return _finish(M, x, rng, p_tag, with_j, pool_size, seed)
