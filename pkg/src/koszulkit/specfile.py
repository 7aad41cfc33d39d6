"""YAML manifold spec files.

Top-level sections (all optional except what a command needs)::

    charts:       name -> {coords: [t, ...], domain: [[lo, hi], ...]}
    metrics:      name -> {chart: C, matrix: [[expr, ...], ...]}
    products:     name -> {kind: warped | kasner | twisted, base: {chart, metric},
                           fibers: [{chart, metric, warping | exponent}], phi, twisting}
    fields:       name -> {chart: C, components: [expr, ...], factor: k (optional)}
    connections:  name -> {kind: plain | ssm | ssnm | ap, P: field, J: [{chart, matrix}, ...]}
    fixtures:     label -> {fixture: M1 | M2 | M3 | M4, <parameter>: value, ...}

Expressions are strings in the ``expr`` grammar and are parsed against the
chart they are declared on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

import yaml

from .connections import Kind, ProductStructure
from .errors import SpecMismatch
from .manifold import Chart, MetricField, VectorField
from .products import (LiftedField, MultiplyWarpedSpec, ProductManifold, Tag, TwistedSpec,
                       build_kasner, build_multiply_warped, build_twisted, lift, lift_structure)

__all__ = ["SpecFile", "FieldDecl", "ConnectionDecl", "load_spec", "parse_spec", "parse_point"]


@dataclass
class FieldDecl:
    name: str
    field: VectorField
    factor: Optional[int] = None


@dataclass
class ConnectionDecl:
    name: str
    kind: Kind
    P: Optional[str] = None
    J: list[ProductStructure] = field(default_factory=list)


@dataclass
class SpecFile:
    charts: dict[str, Chart] = field(default_factory=dict)
    metrics: dict[str, MetricField] = field(default_factory=dict)
    products: dict[str, ProductManifold] = field(default_factory=dict)
    fields: dict[str, FieldDecl] = field(default_factory=dict)
    connections: dict[str, ConnectionDecl] = field(default_factory=dict)
    fixtures: dict[str, dict] = field(default_factory=dict)

    def product(self, name: Optional[str] = None) -> ProductManifold:
        if name is None:
            if len(self.products) != 1:
                raise SpecMismatch(f"spec declares {len(self.products)} products; name one with --product")
            return next(iter(self.products.values()))
        return _get(self.products, name, "product")

    def lifted(self, M: ProductManifold, name: str) -> LiftedField:
        """Field ``name`` lifted into ``M`` (by its factor index or the first factor on its chart)."""
        decl = _get(self.fields, name, "field")
        if decl.factor is not None:
            return lift(M, decl.field, Tag(decl.factor))
        if decl.field.chart == M.chart:
            for t, (fc, _) in enumerate(M.factors):
                try:
                    return lift(M, decl.field, Tag(t))
                except SpecMismatch:
                    continue
            raise SpecMismatch(f"field {name!r} is not tangent to a single factor")
        for t, (fc, _) in enumerate(M.factors):
            if fc == decl.field.chart:
                return lift(M, decl.field, Tag(t))
        raise SpecMismatch(f"field {name!r} lives on a chart that is not a factor of the product")

    def structure(self, M: ProductManifold, conn: ConnectionDecl) -> ProductStructure:
        if not conn.J:
            raise SpecMismatch(f"connection {conn.name!r} needs J")
        if len(conn.J) == 1 and conn.J[0].chart == M.chart:
            return conn.J[0]
        return lift_structure(M, conn.J)


def _get(table: dict, name: str, what: str):
    if name not in table:
        known = ", ".join(table) or "none"
        raise SpecMismatch(f"unknown {what} {name!r} (declared: {known})")
    return table[name]


def _need(d: dict, key: str, where: str):
    if not isinstance(d, dict) or key not in d:
        raise SpecMismatch(f"{where}: missing {key!r}")
    return d[key]


def _text(v) -> str:
    return v if isinstance(v, str) else repr(float(v))


def _chart(name: str, d: dict) -> Chart:
    coords = _need(d, "coords", f"chart {name}")
    dom = d.get("domain", [[-1e6, 1e6]] * len(coords))
    return Chart(tuple(str(c) for c in coords), tuple(tuple(float(a) for a in iv) for iv in dom), name=name)


def _factor(spec: SpecFile, d: dict, where: str) -> tuple[Chart, MetricField]:
    chart = _get(spec.charts, _need(d, "chart", where), "chart")
    metric = _get(spec.metrics, _need(d, "metric", where), "metric")
    if metric.chart != chart:
        raise SpecMismatch(f"{where}: metric is declared on another chart")
    return chart, metric


def _product(spec: SpecFile, name: str, d: dict) -> ProductManifold:
    where = f"product {name}"
    kind = str(_need(d, "kind", where))
    base = _factor(spec, _need(d, "base", where), where + " base")
    fibers_d = _need(d, "fibers", where)
    fibers = [_factor(spec, f, f"{where} fiber {k + 1}") for k, f in enumerate(fibers_d)]
    if kind == "warped":
        warps = [_text(_need(f, "warping", f"{where} fiber {k + 1}")) for k, f in enumerate(fibers_d)]
        return build_multiply_warped(MultiplyWarpedSpec(base, tuple(fibers), tuple(warps)))
    if kind == "kasner":
        exps = [float(_need(f, "exponent", f"{where} fiber {k + 1}")) for k, f in enumerate(fibers_d)]
        return build_kasner(base, _text(_need(d, "phi", where)), exps, fibers)
    if kind == "twisted":
        if len(fibers) != 1:
            raise SpecMismatch(f"{where}: a twisted product has one fiber")
        return build_twisted(TwistedSpec(base, fibers[0], _text(_need(d, "twisting", where))))
    raise SpecMismatch(f"{where}: unknown kind {kind!r} (warped, kasner, twisted)")


def _structure(spec: SpecFile, d: dict, where: str) -> ProductStructure:
    chart = _get(spec.charts, _need(d, "chart", where), "chart")
    rows = tuple(tuple(_text(e) for e in row) for row in _need(d, "matrix", where))
    return ProductStructure(chart, rows)


def parse_spec(doc: Any) -> SpecFile:
    if doc is None:
        doc = {}
    if not isinstance(doc, dict):
        raise SpecMismatch("spec file must be a mapping of sections")
    unknown = set(doc) - {"charts", "metrics", "products", "fields", "connections", "fixtures"}
    if unknown:
        raise SpecMismatch(f"unknown section {sorted(unknown)[0]!r}")
    spec = SpecFile()
    for name, d in (doc.get("charts") or {}).items():
        spec.charts[name] = _chart(name, d)
    for name, d in (doc.get("metrics") or {}).items():
        chart = _get(spec.charts, _need(d, "chart", f"metric {name}"), "chart")
        rows = tuple(tuple(_text(e) for e in row) for row in _need(d, "matrix", f"metric {name}"))
        spec.metrics[name] = MetricField(chart, rows)
    for name, d in (doc.get("products") or {}).items():
        spec.products[name] = _product(spec, name, d)
    for name, d in (doc.get("fields") or {}).items():
        chart_name = _need(d, "chart", f"field {name}")
        if chart_name in spec.products:
            chart = spec.products[chart_name].chart
        else:
            chart = _get(spec.charts, chart_name, "chart")
        comps = tuple(_text(c) for c in _need(d, "components", f"field {name}"))
        spec.fields[name] = FieldDecl(name, VectorField(chart, comps), d.get("factor"))
    for name, d in (doc.get("connections") or {}).items():
        kind_text = str(_need(d, "kind", f"connection {name}"))
        if kind_text not in {k.value for k in Kind}:
            raise SpecMismatch(f"connection {name}: unknown kind {kind_text!r}")
        kind = Kind(kind_text)
        P = d.get("P")
        if kind in (Kind.SSM, Kind.SSNM):
            if P is None:
                raise SpecMismatch(f"connection {name}: {kind.value} needs P")
            _get(spec.fields, P, "field")
        J = [_structure(spec, s, f"connection {name} J") for s in (d.get("J") or [])]
        if kind is Kind.AP and not J:
            raise SpecMismatch(f"connection {name}: ap needs J")
        spec.connections[name] = ConnectionDecl(name, kind, P, J)
    for label, d in (doc.get("fixtures") or {}).items():
        if not isinstance(d, dict):
            raise SpecMismatch(f"fixture {label}: bindings must be a mapping")
        spec.fixtures[label] = dict(d)
    return spec


def load_spec(path: str | Path) -> SpecFile:
    p = Path(path)
    if not p.is_file():
        raise SpecMismatch(f"spec file {str(p)!r} not found")
    try:
        doc = yaml.safe_load(p.read_text())
    except yaml.YAMLError as e:
        raise SpecMismatch(f"spec file {str(p)!r} is not valid YAML: {e}") from None
    return parse_spec(doc)


def parse_point(text: str) -> dict[str, float]:
    """``"t=0.5,u=0.1"`` as a coordinate mapping; every coordinate must be given."""
    out: dict[str, float] = {}
    for part in filter(None, (s.strip() for s in text.split(","))):
        if "=" not in part:
            raise SpecMismatch(f"point entry {part!r} is not name=value")
        k, v = (s.strip() for s in part.split("=", 1))
        try:
            out[k] = float(v)
        except ValueError:
            raise SpecMismatch(f"point coordinate {k!r} has non-numeric value {v!r}") from None
    return out

