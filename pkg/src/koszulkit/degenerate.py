"""Behaviour of twisted-product contraction items as the twisting function vanishes.

A twisted product whose twisting b vanishes somewhere has a degenerate metric
there.  The probe walks a path of points on which b takes the geometric values
1e-2, 1e-3, ... and evaluates the closed-form contraction items
K(A, B, .)K(C, D, .) with base and fiber arguments along it.  A series
converges when it stays bounded and its last three values agree to the
Cauchy tolerance.  It also compares the limit with the value at the
degenerate point itself, where the contraction is computed from the Koszul
forms with the pseudo-inverse co-metric.  That value is only meaningful when
the forms annihilate the radical, so a gap means the smooth extension
disagrees with the degenerate geometry.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from .connections import Kind, basis_jet, form_for
from .manifold import Chart, ExactInverse, MetricField, PseudoInverse, VectorField
from .products import LiftedField, ProductManifold, Tag, TwistedSpec, build_twisted, lift
from .products.catalog import CATALOG, Context, evaluate

__all__ = ["SeriesResult", "ProbeResult", "twisted_probe_manifold", "hypothesis_holds", "probe", "probe_manifold",
           "degenerate_suite", "HYPOTHESIS_TWISTING", "COUNTEREXAMPLE_TWISTING", "PROBE_ITEMS"]

HYPOTHESIS_TWISTING = "t^2*(1+u^2)/4"
COUNTEREXAMPLE_TWISTING = "t*(1+u^2)"

# item number -> argument roles (B base, F fiber) of the plain twisted contraction list
PROBE_ITEMS = {1: "BBBB", 2: "BBBF", 3: "BBFF", 4: "BFBF", 5: "BFFF"}


@dataclass
class SeriesResult:
    item: str
    args: str
    values: list[float]
    oracle: list[float]
    limit_value: float
    bounded: bool
    spread: float
    cauchy: bool
    limit_gap: float
    continuous: bool

    @property
    def converged(self) -> bool:
        return self.bounded and self.cauchy

    def to_dict(self) -> dict:
        d = asdict(self)
        d["converged"] = self.converged
        return d


@dataclass
class ProbeResult:
    twisting: str
    hypothesis: bool
    b_values: list[float]
    t_values: list[float]
    series: list[SeriesResult] = field(default_factory=list)
    skipped: Optional[str] = None

    @property
    def converged(self) -> bool:
        return bool(self.series) and all(s.converged for s in self.series)

    @property
    def diverged(self) -> bool:
        """Some item fails to converge or converges to the wrong degenerate value."""
        return any(not (s.converged and s.continuous) for s in self.series)

    def to_dict(self) -> dict:
        return {"twisting": self.twisting, "hypothesis": self.hypothesis, "skipped": self.skipped,
                "b_values": self.b_values, "t_values": self.t_values,
                "converged": self.converged, "diverged": self.diverged,
                "series": [s.to_dict() for s in self.series]}


def twisted_probe_manifold(twisting: str) -> ProductManifold:
    """Base (t, s), fiber (u, v), both curved, twisted by ``twisting``."""
    base_chart = Chart(("t", "s"), ((-2.0, 2.0), (-2.0, 2.0)), name="B")
    fiber_chart = Chart(("u", "v"), ((-2.0, 2.0), (-2.0, 2.0)), name="F")
    gB = MetricField.diagonal(base_chart, ["1+s^2/2", "1+t/3"])
    gF = MetricField.diagonal(fiber_chart, ["1+v^2/3", "2+u/2"])
    return build_twisted(TwistedSpec((base_chart, gB), (fiber_chart, gF), twisting))


def _fields(M: ProductManifold):
    base, fib = M.factors[0][0], M.factors[1][0]
    B = [VectorField(base, comps) for comps in
         (("1+s/2", "t/3"), ("s/4", "1-t/2"), ("1+t*s/5", "1/2"), ("1/3", "1+s^2/4"))]
    F = [VectorField(fib, comps) for comps in
         (("1+v/3", "u/2"), ("u*v/4", "1"), ("1/2+u/5", "1-v/4"))]
    return [lift(M, f, Tag(0)) for f in B], [lift(M, f, Tag(1)) for f in F]


def hypothesis_holds(M: ProductManifold, x0: np.ndarray, tol: float = 1e-12) -> bool:
    """b = 0 and db = 0 at the degenerate point ``x0``."""
    bj = M.warping(1).jet(np.asarray(x0, dtype=float))
    return abs(float(bj.val)) <= tol and float(np.max(np.abs(bj.grad))) <= tol


def _path(M: ProductManifold, x0: np.ndarray, b_values: Sequence[float]) -> list[float]:
    """Values of t > 0 with b(t, s0, u0, v0) equal to each target."""
    b = M.warping(1)

    def at(t):
        x = x0.copy()
        x[0] = t
        return float(b.jet(x).val)
    hi = 1.0
    if at(hi) < max(b_values):
        raise ValueError("twisting does not reach the first probe value on (0, 1]")
    return [brentq(lambda t: at(t) - v, 0.0, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)
            for v in b_values]


def _contraction(M: ProductManifold, x: np.ndarray, jets, rule) -> float:
    """K(A, B, .) paired with K(C, D, .) through the co-metric ``rule``."""
    G = M.metric.jet(x)
    gplus = rule.matrix(M.metric, x, G.val)
    K = form_for(Kind.PLAIN, G)
    E = basis_jet(M.chart.dim).truncate(1)
    A, B, C, D = (j.truncate(1) for j in jets)
    return float(K(A, B, E).val @ gplus @ K(C, D, E).val)


def probe_manifold(M: ProductManifold, base: Sequence[LiftedField], fiber: Sequence[LiftedField],
                   point: Sequence[float], label: str, decades: Sequence[int] = range(2, 15),
                   bound: float = 1e6, tol: float = 1e-6) -> ProbeResult:
    """Closed-form contraction items along b -> 0 towards ``point`` (t = point[0] = 0)."""
    x0 = np.asarray(point, dtype=float)
    b_values = [10.0 ** -k for k in decades]
    ts = _path(M, x0, b_values)
    res = ProbeResult(label, hypothesis_holds(M, x0), b_values, ts)
    fam = CATALOG.by_name("plain-contraction/twisted")
    for number, roles in PROBE_ITEMS.items():
        item = fam.item(number)
        pat = item.patterns[0]
        pools = {"B": itertools.cycle(base), "F": itertools.cycle(fiber)}
        fields = [next(pools[r]) for r in roles]
        env = pat.bind([f.tag for f in fields])
        values, oracle = [], []
        for t in ts:
            x = x0.copy()
            x[0] = t
            ctx = Context(M, x)
            jets = [f.field.jet(x) for f in fields]
            values.append(evaluate(fam, item, pat, env, ctx, [ctx.arg(f) for f in fields]))
            oracle.append(_contraction(M, x, jets, ExactInverse(cond_limit=math.inf)))
        at0 = _contraction(M, x0, [f.field.jet(x0) for f in fields], PseudoInverse())
        tail = values[-3:]
        spread = max(tail) - min(tail)
        bounded = all(math.isfinite(v) and abs(v) < bound for v in values)
        gap = abs(values[-1] - at0)
        res.series.append(SeriesResult(fam.label(item), roles, values, oracle, at0, bounded, spread,
                                       spread < tol, gap, gap < tol))
    return res


def probe(twisting: str = HYPOTHESIS_TWISTING, decades: Sequence[int] = range(2, 15),
          point: Sequence[float] = (0.0, 0.4, 0.5, -0.3), bound: float = 1e6,
          tol: float = 1e-6) -> ProbeResult:
    """Probe on the two-dimensional-base test manifold twisted by ``twisting``."""
    M = twisted_probe_manifold(twisting)
    base, fib = _fields(M)
    return probe_manifold(M, base, fib, point, twisting, decades, bound, tol)


def degenerate_suite(decades: Sequence[int] = range(2, 15), tol: float = 1e-6) -> list[ProbeResult]:
    """The hypothesis case and the counterexample with a transversal zero of b."""
    return [probe(HYPOTHESIS_TWISTING, decades, tol=tol), probe(COUNTEREXAMPLE_TWISTING, decades, tol=tol)]
