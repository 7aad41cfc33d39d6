"""Charts, fields, possibly degenerate metrics and co-metric contraction."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence, Union

import numpy as np

from . import expr as ex
from .errors import (ChartMismatch, DomainError, RankDeficiencyAmbiguous,
                     SingularMetric, SpecMismatch, UnknownSymbol)
from .jets import Jet, jeinsum

__all__ = [
    "Chart", "ScalarField", "VectorField", "CovectorField", "MetricField",
    "CoMetricRule", "ExactInverse", "PseudoInverse", "ProductBlock", "Block",
    "metric_eval", "lie_bracket", "cometric_apply", "as_point",
]

Point = Union[Mapping[str, float], Sequence[float], np.ndarray]


@dataclass(frozen=True)
class Chart:
    coord_names: tuple[str, ...]
    domain: tuple[tuple[float, float], ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "coord_names", tuple(self.coord_names))
        object.__setattr__(self, "domain", tuple((float(a), float(b)) for a, b in self.domain))
        if not self.coord_names:
            raise SpecMismatch("a chart needs at least one coordinate")
        if len(set(self.coord_names)) != len(self.coord_names):
            raise SpecMismatch(f"repeated coordinate names in {self.coord_names}")
        if len(self.domain) != len(self.coord_names):
            raise SpecMismatch("one domain interval per coordinate is required")
        for name, (lo, hi) in zip(self.coord_names, self.domain):
            if not lo < hi:
                raise SpecMismatch(f"empty interval for coordinate {name!r}")

    @property
    def dim(self) -> int:
        return len(self.coord_names)

    @cached_property
    def index(self) -> dict[str, int]:
        return {k: i for i, k in enumerate(self.coord_names)}

    def point(self, p: Point, check: bool = True) -> np.ndarray:
        """Coordinate vector of ``p``; mappings must name every coordinate."""
        if isinstance(p, Mapping):
            missing = [k for k in self.coord_names if k not in p]
            extra = [k for k in p if k not in self.index]
            if extra:
                raise UnknownSymbol(extra[0])
            if missing:
                raise DomainError(f"point is missing coordinate {missing[0]!r}")
            x = np.array([float(p[k]) for k in self.coord_names])
        else:
            x = np.asarray(p, dtype=float).reshape(-1)
            if x.shape != (self.dim,):
                raise ChartMismatch(f"point has {x.size} coordinates, chart has {self.dim}")
        if check:
            self.check(x)
        return x

    def check(self, x: np.ndarray) -> None:
        for name, v, (lo, hi) in zip(self.coord_names, x, self.domain):
            if not lo < v < hi:
                raise DomainError(f"coordinate {name}={float(v)!r} outside domain ({lo}, {hi})")

    def sample(self, rng: np.random.Generator, shrink: float = 0.1) -> np.ndarray:
        """Uniform point in the domain box shrunk by ``shrink`` at each end."""
        lo = np.array([a for a, _ in self.domain])
        hi = np.array([b for _, b in self.domain])
        lo, hi = np.maximum(lo, -1e6), np.minimum(hi, 1e6)
        w = hi - lo
        return rng.uniform(lo + shrink * w, hi - shrink * w)


def _same_chart(*charts: Chart) -> Chart:
    first = charts[0]
    for c in charts[1:]:
        if c is not first and c != first:
            raise ChartMismatch(f"fields live on different charts {first.coord_names} and {c.coord_names}")
    return first


@dataclass(frozen=True, eq=False)
class ScalarField:
    chart: Chart
    expr: ex.Expr

    def __post_init__(self):
        if isinstance(self.expr, (int, float)):
            object.__setattr__(self, "expr", ex.Num(float(self.expr)))
        elif isinstance(self.expr, str):
            object.__setattr__(self, "expr", ex.parse_expr(self.expr, self.chart))
        for s in ex.symbols(self.expr):
            if s not in self.chart.index:
                raise UnknownSymbol(s)

    @cached_property
    def _compiled(self):
        return ex.compile_jet(self.expr, self.chart.index)

    @property
    def is_zero(self) -> bool:
        return isinstance(self.expr, ex.Num) and self.expr.value == 0.0

    def jet(self, x: np.ndarray) -> Jet:
        j = self._compiled(x)
        if not np.isfinite(j.val):
            raise DomainError(f"{ex.to_text(self.expr)} is not finite at {x.tolist()}")
        return j

    def __call__(self, p: Point) -> float:
        return float(self.jet(self.chart.point(p)).val)

    def __repr__(self) -> str:
        return f"ScalarField({ex.to_text(self.expr)!r})"


def _stack(jets: list[Jet]) -> Jet:
    return Jet(np.array([j.val for j in jets]),
               np.stack([j.grad for j in jets]),
               np.stack([j.hess for j in jets]))


@dataclass(frozen=True, eq=False)
class VectorField:
    chart: Chart
    components: tuple[ScalarField, ...]

    def __post_init__(self):
        comps = tuple(c if isinstance(c, ScalarField) else ScalarField(self.chart, c)
                      for c in self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) != self.chart.dim:
            raise ChartMismatch(f"{len(comps)} components on a {self.chart.dim}-dimensional chart")
        _same_chart(self.chart, *(c.chart for c in comps))

    @classmethod
    def coordinate(cls, chart: Chart, i: Union[int, str]) -> "VectorField":
        k = chart.index[i] if isinstance(i, str) else i
        return cls(chart, tuple(1.0 if j == k else 0.0 for j in range(chart.dim)))

    @classmethod
    def zero(cls, chart: Chart) -> "VectorField":
        return cls(chart, (0.0,) * chart.dim)

    def jet(self, x: np.ndarray) -> Jet:
        return _stack([c.jet(x) for c in self.components])

    def at(self, p: Point) -> np.ndarray:
        return self.jet(self.chart.point(p)).val

    def __repr__(self) -> str:
        return f"VectorField({[ex.to_text(c.expr) for c in self.components]})"


@dataclass(frozen=True, eq=False)
class CovectorField:
    """Components on the coordinate fields, either numbers or scalar fields."""

    chart: Chart
    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) != self.chart.dim:
            raise ChartMismatch(f"{len(comps)} components on a {self.chart.dim}-dimensional chart")

    def at(self, x: np.ndarray) -> np.ndarray:
        return np.array([c.jet(x).val if isinstance(c, ScalarField) else float(c)
                         for c in self.components])

    @classmethod
    def differential(cls, f: ScalarField) -> "CovectorField":
        return cls(f.chart, tuple(ScalarField(f.chart, ex.diff(f.expr, k)) for k in f.chart.coord_names))


@dataclass(frozen=True, eq=False)
class MetricField:
    chart: Chart
    entries: tuple[tuple[ScalarField, ...], ...]

    def __post_init__(self):
        n = self.chart.dim
        rows = tuple(tuple(e if isinstance(e, ScalarField) else ScalarField(self.chart, e) for e in row)
                     for row in self.entries)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ChartMismatch(f"metric must be {n}x{n}")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j].expr != rows[j][i].expr:
                    raise SpecMismatch(f"metric entries ({i},{j}) and ({j},{i}) differ")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def diagonal(cls, chart: Chart, diag: Sequence) -> "MetricField":
        n = chart.dim
        return cls(chart, tuple(tuple(diag[i] if i == j else 0.0 for j in range(n)) for i in range(n)))

    @cached_property
    def _nonzero(self) -> list[tuple[int, int, ScalarField]]:
        n = self.chart.dim
        return [(i, j, self.entries[i][j]) for i in range(n) for j in range(i, n)
                if not self.entries[i][j].is_zero]

    def jet(self, x: np.ndarray) -> Jet:
        n = self.chart.dim
        v = np.zeros((n, n))
        g = np.zeros((n, n, n))
        h = np.zeros((n, n, n, n))
        for i, j, e in self._nonzero:
            jt = e.jet(x)
            v[i, j] = v[j, i] = jt.val
            g[i, j] = g[j, i] = jt.grad
            h[i, j] = h[j, i] = jt.hess
        return Jet(v, g, h)

    def matrix(self, p: Point) -> np.ndarray:
        return self.jet(self.chart.point(p)).val


# co-metric rules ------------------------------------------------------------

class CoMetricRule:
    """How to pair two 1-forms given a (possibly degenerate) metric."""

    def matrix(self, g: MetricField, x: np.ndarray, gval: np.ndarray | None = None) -> np.ndarray:
        raise NotImplementedError


@dataclass(frozen=True)
class ExactInverse(CoMetricRule):
    cond_limit: float = 1e13

    def matrix(self, g, x, gval=None):
        gval = g.jet(x).val if gval is None else gval
        s = np.linalg.svd(gval, compute_uv=False)
        if s[0] == 0.0 or s[-1] <= s[0] / self.cond_limit:
            raise SingularMetric(f"metric is singular at {np.round(x, 12).tolist()}")
        return np.linalg.inv(gval)


@dataclass(frozen=True)
class PseudoInverse(CoMetricRule):
    """Moore-Penrose inverse with a relative singular-value cutoff.

    A singular value inside one decade of the cutoff on either side makes the
    rank decision unreliable and raises ``RankDeficiencyAmbiguous``.
    """

    rank_tol: float = 1e-9

    def __post_init__(self):
        if not self.rank_tol > 0:
            raise SpecMismatch("rank_tol must be positive")

    def matrix(self, g, x, gval=None):
        gval = g.jet(x).val if gval is None else gval
        u, s, vt = np.linalg.svd(gval)
        if s[0] == 0.0:
            return np.zeros_like(gval)
        cut = self.rank_tol * s[0]
        near = (s > 0.1 * cut) & (s < 10.0 * cut)
        if np.any(near):
            raise RankDeficiencyAmbiguous(
                f"singular value {float(s[near][0])!r} is within tolerance of the cutoff {cut!r}")
        inv = np.where(s > cut, 1.0 / np.where(s > cut, s, 1.0), 0.0)
        return (vt.T * inv) @ u.T


@dataclass(frozen=True)
class Block:
    """One diagonal block of a product co-metric.

    The block of the inverse is ``inverse(factor_metric) / weight``; with no
    factor metric the product metric's own block is inverted.
    """

    start: int
    stop: int
    factor_metric: MetricField | None = None
    weight: ScalarField | None = None


@dataclass(frozen=True)
class ProductBlock(CoMetricRule):
    blocks: tuple[Block, ...] = field(default_factory=tuple)

    def matrix(self, g, x, gval=None):
        n = g.chart.dim
        out = np.zeros((n, n))
        for blk in self.blocks:
            sl = slice(blk.start, blk.stop)
            if blk.factor_metric is not None:
                m = blk.factor_metric.jet(x).val
            else:
                m = (g.jet(x).val if gval is None else gval)[sl, sl]
            inv = ExactInverse().matrix(None, x, m)
            if blk.weight is not None:
                w = float(blk.weight.jet(x).val)
                if w == 0.0:
                    raise SingularMetric(f"block scale vanishes at {np.round(x, 12).tolist()}")
                inv = inv / w
            out[sl, sl] = inv
        return out


# operations -----------------------------------------------------------------

def as_point(chart: Chart, p: Point) -> np.ndarray:
    return chart.point(p)


def metric_eval(g: MetricField, X: VectorField, Y: VectorField, p: Point) -> float:
    """g(X, Y) at ``p``."""
    chart = _same_chart(g.chart, X.chart, Y.chart)
    x = chart.point(p)
    return float(X.jet(x).val @ g.jet(x).val @ Y.jet(x).val)


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """[X, Y]^k = X^i d_i Y^k - Y^i d_i X^k, built symbolically."""
    chart = _same_chart(X.chart, Y.chart)
    comps = []
    for k in range(chart.dim):
        terms = []
        for i, name in enumerate(chart.coord_names):
            terms.append(ex.mul(X.components[i].expr, ex.diff(Y.components[k].expr, name)))
            terms.append(ex.neg(ex.mul(Y.components[i].expr, ex.diff(X.components[k].expr, name))))
        comps.append(ScalarField(chart, ex.sum_exprs(terms)))
    return VectorField(chart, tuple(comps))


def _covector_values(w, chart: Chart, x: np.ndarray) -> np.ndarray:
    if isinstance(w, CovectorField):
        _same_chart(chart, w.chart)
        return w.at(x)
    arr = np.asarray(w, dtype=float)
    if arr.shape != (chart.dim,):
        raise ChartMismatch(f"covector has shape {arr.shape}, chart has dimension {chart.dim}")
    return arr


def cometric_apply(g: MetricField, rule: CoMetricRule, omega, eta, p: Point) -> float:
    """omega^T G+ eta where G+ is the rule's generalized inverse of g(p)."""
    x = g.chart.point(p)
    w1 = _covector_values(omega, g.chart, x)
    w2 = _covector_values(eta, g.chart, x)
    return float(w1 @ rule.matrix(g, x) @ w2)
