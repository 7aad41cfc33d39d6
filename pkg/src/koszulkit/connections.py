"""Koszul forms (plain, semi-symmetric metric and non-metric, almost product)
and the lower covariant derivative.

The ``*_jet`` functions work on jets at a single point and are what the
curvature and verification layers call; the public functions take fields
and a point.  Vector-field jets may carry leading batch axes, which is how a
whole 1-form ``Z -> K(X, Y, Z)`` is produced in one call.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .errors import InvalidStructure, SpecMismatch
from .jets import Jet, bracket, derive, jeinsum, pair
from .manifold import (Chart, CovectorField, MetricField, Point, ScalarField,
                       VectorField, _same_chart)

__all__ = [
    "Kind", "ConnectionSpec", "ProductStructure", "StructureReport",
    "koszul", "ssm_koszul", "ssnm_koszul", "ap_koszul", "lower_cov_deriv",
    "validate_structure", "koszul_jet", "ssm_koszul_jet", "ssnm_koszul_jet",
    "ap_koszul_jet", "apply_structure", "basis_jet", "form_for",
]

STRUCTURE_TOL = 1e-10


class Kind(str, enum.Enum):
    PLAIN = "plain"
    SSM = "ssm"
    SSNM = "ssnm"
    AP = "ap"


@dataclass(frozen=True, eq=False)
class ProductStructure:
    """A field of endomorphisms J given by its matrix on coordinate fields."""

    chart: Chart
    matrix: tuple[tuple[ScalarField, ...], ...]

    def __post_init__(self):
        n = self.chart.dim
        rows = tuple(tuple(e if isinstance(e, ScalarField) else ScalarField(self.chart, e) for e in row)
                     for row in self.matrix)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise InvalidStructure(f"structure matrix must be {n}x{n}")
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def identity(cls, chart: Chart) -> "ProductStructure":
        n = chart.dim
        return cls(chart, tuple(tuple(1.0 if i == j else 0.0 for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, chart: Chart, diag) -> "ProductStructure":
        n = chart.dim
        return cls(chart, tuple(tuple(diag[i] if i == j else 0.0 for j in range(n)) for i in range(n)))

    def jet(self, x: np.ndarray) -> Jet:
        n = self.chart.dim
        v = np.zeros((n, n))
        g = np.zeros((n, n, n))
        h = np.zeros((n, n, n, n))
        for i in range(n):
            for j in range(n):
                e = self.matrix[i][j]
                if e.is_zero:
                    continue
                jt = e.jet(x)
                v[i, j], g[i, j], h[i, j] = jt.val, jt.grad, jt.hess
        return Jet(v, g, h)


@dataclass(frozen=True, eq=False)
class ConnectionSpec:
    kind: Kind
    P: Optional[VectorField] = None
    J: Optional[ProductStructure] = None

    def __post_init__(self):
        kind = Kind(self.kind)
        object.__setattr__(self, "kind", kind)
        needs_p = kind in (Kind.SSM, Kind.SSNM)
        if needs_p != (self.P is not None):
            raise SpecMismatch(f"{kind.value} connection {'needs' if needs_p else 'takes no'} vector field P")
        if (kind is Kind.AP) != (self.J is not None):
            raise SpecMismatch(f"{kind.value} connection {'needs' if kind is Kind.AP else 'takes no'} structure J")


# jet level --------------------------------------------------------------------

def basis_jet(n: int) -> Jet:
    """The n coordinate fields as one batched vector-field jet."""
    return Jet(np.eye(n), np.zeros((n, n, n)), np.zeros((n, n, n, n)))


def koszul_jet(G: Jet, X: Jet, Y: Jet, Z: Jet) -> Jet:
    t = (derive(X, pair(G, Y, Z)) + derive(Y, pair(G, Z, X)) - derive(Z, pair(G, X, Y))
         - pair(G, X, bracket(Y, Z)) + pair(G, Y, bracket(Z, X)) + pair(G, Z, bracket(X, Y)))
    return t * 0.5


def ssm_koszul_jet(G: Jet, P: Jet, X: Jet, Y: Jet, Z: Jet) -> Jet:
    return (koszul_jet(G, X, Y, Z) + pair(G, Y, P) * pair(G, X, Z)
            - pair(G, X, Y) * pair(G, P, Z))


def ssnm_koszul_jet(G: Jet, P: Jet, X: Jet, Y: Jet, Z: Jet) -> Jet:
    return koszul_jet(G, X, Y, Z) + pair(G, Y, P) * pair(G, X, Z)


def apply_structure(J: Jet, Y: Jet) -> Jet:
    return jeinsum("ij,...j->...i", J, Y)


def ap_koszul_jet(G: Jet, J: Jet, X: Jet, Y: Jet, Z: Jet) -> Jet:
    return (koszul_jet(G, X, Y, Z) + koszul_jet(G, X, apply_structure(J, Y), apply_structure(J, Z))) * 0.5


def form_for(kind: Kind, G: Jet, P: Jet | None = None, J: Jet | None = None):
    """The Koszul form of ``kind`` as a function of three vector-field jets."""
    kind = Kind(kind)
    if kind is Kind.PLAIN:
        return lambda X, Y, Z: koszul_jet(G, X, Y, Z)
    if kind is Kind.SSM:
        return lambda X, Y, Z: ssm_koszul_jet(G, P, X, Y, Z)
    if kind is Kind.SSNM:
        return lambda X, Y, Z: ssnm_koszul_jet(G, P, X, Y, Z)
    return lambda X, Y, Z: ap_koszul_jet(G, J, X, Y, Z)


# public pointwise API ---------------------------------------------------------

def _prep(g: MetricField, p: Point, *fields):
    chart = _same_chart(g.chart, *(f.chart for f in fields if f is not None))
    x = chart.point(p)
    return x, g.jet(x), [None if f is None else f.jet(x) for f in fields]


def _check_involution(Jv: np.ndarray) -> None:
    r = float(np.max(np.abs(Jv @ Jv - np.eye(len(Jv)))))
    if r > STRUCTURE_TOL:
        raise InvalidStructure(f"J^2 differs from the identity by {r:.3g}")


def koszul(g: MetricField, X: VectorField, Y: VectorField, Z: VectorField, p: Point) -> float:
    """Plain Koszul form K(X, Y, Z) at ``p``."""
    _, G, (Xj, Yj, Zj) = _prep(g, p, X, Y, Z)
    return float(koszul_jet(G, Xj, Yj, Zj).val)


def ssm_koszul(g: MetricField, P: VectorField, X: VectorField, Y: VectorField,
               Z: VectorField, p: Point) -> float:
    _, G, (Pj, Xj, Yj, Zj) = _prep(g, p, P, X, Y, Z)
    return float(ssm_koszul_jet(G, Pj, Xj, Yj, Zj).val)


def ssnm_koszul(g: MetricField, P: VectorField, X: VectorField, Y: VectorField,
                Z: VectorField, p: Point) -> float:
    _, G, (Pj, Xj, Yj, Zj) = _prep(g, p, P, X, Y, Z)
    return float(ssnm_koszul_jet(G, Pj, Xj, Yj, Zj).val)


def ap_koszul(g: MetricField, J: ProductStructure, X: VectorField, Y: VectorField,
              Z: VectorField, p: Point) -> float:
    x, G, (Xj, Yj, Zj) = _prep(g, p, X, Y, Z)
    _same_chart(g.chart, J.chart)
    Jj = J.jet(x)
    _check_involution(Jj.val)
    return float(ap_koszul_jet(G, Jj, Xj, Yj, Zj).val)


def lower_cov_deriv(g: MetricField, spec: ConnectionSpec, X: VectorField, Y: VectorField,
                    p: Point) -> CovectorField:
    """The 1-form Z -> K(X, Y, Z) for the Koszul variant named by ``spec``."""
    x, G, (Xj, Yj, Pj) = _prep(g, p, X, Y, spec.P)
    Jj = None
    if spec.J is not None:
        _same_chart(g.chart, spec.J.chart)
        Jj = spec.J.jet(x)
        _check_involution(Jj.val)
    form = form_for(spec.kind, G, Pj, Jj)
    vals = form(Xj, Yj, basis_jet(g.chart.dim)).val
    return CovectorField(g.chart, tuple(float(v) for v in vals))


@dataclass(frozen=True)
class StructureReport:
    involution_residual: float
    isometry_residual: float
    tol: float = 1e-9
    points: int = 0

    @property
    def passed(self) -> bool:
        return self.involution_residual < self.tol and self.isometry_residual < self.tol


def validate_structure(g: MetricField, J: ProductStructure, sample_points: Iterable[Point],
                       n_vectors: int = 4, seed: int = 0) -> StructureReport:
    """Largest |J^2 - I| and |g(JX, JY) - g(X, Y)| over the samples.

    X and Y range over the coordinate fields and ``n_vectors`` random vectors
    per point.
    """
    _same_chart(g.chart, J.chart)
    rng = np.random.default_rng(seed)
    n = g.chart.dim
    inv = iso = 0.0
    count = 0
    for p in sample_points:
        x = g.chart.point(p)
        Jv = J.jet(x).val
        Gv = g.jet(x).val
        inv = max(inv, float(np.max(np.abs(Jv @ Jv - np.eye(n)))))
        iso = max(iso, float(np.max(np.abs(Jv.T @ Gv @ Jv - Gv))))
        for _ in range(n_vectors):
            a, b = rng.uniform(-1, 1, n), rng.uniform(-1, 1, n)
            iso = max(iso, abs(float((Jv @ a) @ Gv @ (Jv @ b) - a @ Gv @ b)))
        count += 1
    return StructureReport(inv, iso, points=count)
