"""Compare closed-form table items with the definitional pipeline.

The definitional side (the "oracle") runs the plain connection and
curvature routines on the assembled product metric with the exact inverse;
it never looks at the tables.  The closed-form side evaluates the table item
selected by the argument tags.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .connections import Kind, basis_jet, form_for
from .curvature import contract4, curvature_tensor, ssm_riemann_jet, ssnm_riemann_jet
from .manifold import ExactInverse
from .products import LiftedField, Tag
from .products.catalog import (CATALOG, Arg, CatalogKey, Context, Family, Obj, Product,
                               evaluate)
from .sampling import Instance, random_twisted, random_warped

__all__ = [
    "CaseRecord", "Finding", "oracle_value", "tag_tuples", "check_family", "catalog_suite",
    "instance_for", "within", "findings", "case_signature",
]


def within(catalog: float, oracle: float, tol_rel: float, tol_abs: float) -> bool:
    if not (math.isfinite(catalog) and math.isfinite(oracle)):
        return False
    return abs(catalog - oracle) <= max(tol_abs, tol_rel * abs(oracle))


@dataclass
class CaseRecord:
    suite: str
    key: str
    item: str
    pattern: str
    case: str
    seed: int
    oracle: float
    value: float
    abs_err: float
    rel_err: float
    passed: bool

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class Finding:
    """A table item that disagrees with the definitional pipeline on one index case."""

    item: str
    case: str
    failed: int
    cases: int
    worst_abs_err: float
    example_key: str
    example_seed: int

    @property
    def persistent(self) -> bool:
        return self.failed >= 2 and self.failed * 2 >= self.cases

    def to_dict(self) -> dict:
        d = asdict(self)
        d["persistent"] = self.persistent
        return d


class _Oracle:
    """Product-level metric data cached per instance."""

    def __init__(self, inst: Instance):
        self.inst = inst
        M = inst.manifold
        self.G = M.metric.jet(inst.x)
        self.gplus = ExactInverse().matrix(M.metric, inst.x, self.G.val)
        self.Pj = None if inst.P is None else inst.P.field.jet(inst.x)
        self.Jj = None if inst.J is None else inst.J.jet(inst.x)
        self.E = basis_jet(M.chart.dim).truncate(1)
        self._tensors: dict[Kind, np.ndarray] = {}

    def tensor(self, kind: Kind) -> np.ndarray:
        if kind not in self._tensors:
            self._tensors[kind] = curvature_tensor(form_for(kind, self.G, self.Pj, self.Jj), self.gplus)
        return self._tensors[kind]

    def value(self, kind: Kind, obj: Obj, jets) -> float:
        form = form_for(kind, self.G, self.Pj, self.Jj)
        if obj is Obj.KOSZUL:
            return float(form(*(j.truncate(1) for j in jets)).val)
        if obj is Obj.CONTRACTION:
            A, B, C, D = (j.truncate(1) for j in jets)
            return float(form(A, B, self.E).val @ self.gplus @ form(C, D, self.E).val)
        if kind in (Kind.PLAIN, Kind.AP):
            # tensorial: the plain expansion always, the almost product one for isometric J
            return contract4(self.tensor(kind), *jets)
        plain = contract4(self.tensor(Kind.PLAIN), *jets)
        if kind is Kind.SSM:
            return ssm_riemann_jet(self.G, self.gplus, self.Pj, *jets, plain=plain)
        return ssnm_riemann_jet(self.G, self.gplus, self.Pj, *jets, plain=plain)


def oracle_value(kind: Kind, obj: Obj, inst: Instance, args: Sequence[LiftedField]) -> float:
    """Definitional value of a Koszul form, curvature or contraction on the product."""
    o = _Oracle(inst)
    return o.value(Kind(kind), Obj(obj), [a.field.jet(inst.x) for a in args])


def _partitions(n: int):
    """Restricted growth strings: every set partition of n positions."""
    if n == 0:
        yield ()
        return

    def rec(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(top + 2):
            yield from rec(prefix + [v], max(top, v))

    yield from rec([0], 0)


def tag_tuples(shape: Sequence[bool], n_fibers: int, l: Optional[int],
               rng: np.random.Generator) -> list[tuple[Tag, ...]]:
    """One representative tag assignment per equality pattern of fiber indices.

    Fiber positions are grouped by every set partition; P's fiber ``l`` either
    joins a group or stays apart.  Groups are mapped to fibers at random.
    """
    fpos = [k for k, s in enumerate(shape) if s]
    out = []
    seen = set()
    for rgs in _partitions(len(fpos)):
        ngroups = (max(rgs) + 1) if rgs else 0
        options = list(range(ngroups)) + [None] if l is not None else [None]
        for lq in options:
            needed = ngroups + (1 if (l is not None and lq is None) else 0)
            if needed > n_fibers:
                continue
            others = [f for f in range(1, n_fibers + 1) if f != l] if l is not None else list(range(1, n_fibers + 1))
            others = list(rng.permutation(others))
            mapping = {}
            for q in range(ngroups):
                mapping[q] = l if q == lq else int(others.pop())
            tags = [Tag(0)] * len(shape)
            for k, q in zip(fpos, rgs):
                tags[k] = Tag(mapping[q])
            t = tuple(tags)
            if t not in seen:
                seen.add(t)
                out.append(t)
    return out


def case_signature(tags: Sequence[Tag], p_tag: Optional[Tag]) -> str:
    """Tags up to renaming of fibers: B for the base, Fl for P's fiber, Fa, Fb, ... otherwise."""
    names: dict[int, str] = {}
    if p_tag is not None and not p_tag.is_base:
        names[p_tag.index] = "l"
    out = []
    for t in tags:
        if t.is_base:
            out.append("B")
            continue
        if t.index not in names:
            names[t.index] = "abcdefgh"[sum(1 for v in names.values() if v != "l")]
        out.append("F" + names[t.index])
    return ",".join(out)


def _pick(inst: Instance, tags: Sequence[Tag], rng: np.random.Generator) -> list[LiftedField]:
    """Fields for the tags, distinct within a factor while its pool lasts."""
    order = {t: list(rng.permutation(len(pool))) for t, pool in inst.pools.items()}
    out = []
    for t in tags:
        left = order[t.index]
        k = left.pop() if left else int(rng.integers(len(inst.pools[t.index])))
        out.append(inst.pools[t.index][k])
    return out


def instance_for(fam: Family, seed: int) -> Instance:
    with_j = fam.connection is Kind.AP
    if fam.product is Product.TWISTED:
        return random_twisted(seed, p_where=fam.p_where, with_j=with_j)
    return random_warped(seed, p_where=fam.p_where, with_j=with_j)


def check_family(fam: Family, seeds: Iterable[int], tol_rel: float = 1e-8, tol_abs: float = 1e-10,
                 suite: str = "catalog") -> list[CaseRecord]:
    """Every item pattern of ``fam`` against the oracle on each seeded instance."""
    records: list[CaseRecord] = []
    for seed in seeds:
        inst = instance_for(fam, seed)
        rng = np.random.default_rng(seed + 7919)
        M = inst.manifold
        l = inst.P.tag.index if (inst.P is not None and not inst.P.tag.is_base) else None
        ora = _Oracle(inst)
        ctx = Context(M, inst.x, inst.P, inst.J)
        cache: dict[int, object] = {}

        def jet_of(f: LiftedField):
            if id(f) not in cache:
                cache[id(f)] = f.field.jet(inst.x)
            return cache[id(f)]
        for shape in sorted(fam.shapes()):
            for tags in tag_tuples(shape, M.n_fibers, l, rng):
                hits = fam.matches(tags, l)
                if not hits:
                    continue
                fields = _pick(inst, tags, rng)
                jets = [jet_of(f) for f in fields]
                oval = ora.value(fam.connection, fam.obj, jets)
                args = [Arg(f.tag, j) for f, j in zip(fields, jets)]
                p_loc = None if inst.P is None else inst.P.tag
                key = CatalogKey(fam.connection, fam.obj, fam.product, p_loc, tags)
                for item, pat, env in hits:
                    val = evaluate(fam, item, pat, env, ctx, args)
                    err = abs(val - oval)
                    records.append(CaseRecord(
                        suite, str(key), fam.label(item), pat.text(), case_signature(tags, p_loc), int(seed), float(oval), float(val),
                        float(err), float(err / abs(oval)) if oval else (0.0 if err == 0 else math.inf),
                        within(val, oval, tol_rel, tol_abs)))
    return records


def findings(records: Sequence[CaseRecord]) -> list[Finding]:
    """Failures grouped by table item and index case, in first-seen order."""
    groups: dict[tuple[str, str], list[CaseRecord]] = {}
    for r in records:
        groups.setdefault((r.item, r.case), []).append(r)
    out = []
    for (item, case), rs in groups.items():
        bad = [r for r in rs if not r.passed]
        if not bad:
            continue
        worst = max(bad, key=lambda r: r.abs_err)
        out.append(Finding(item, case, len(bad), len(rs), worst.abs_err, worst.key, worst.seed))
    return out


def catalog_suite(n: int = 20, seed: int = 0, tol_rel: float = 1e-8, tol_abs: float = 1e-10,
                  families: Sequence[Family] | None = None) -> list[CaseRecord]:
    fams = list(CATALOG.families if families is None else families)
    out: list[CaseRecord] = []
    for k, fam in enumerate(fams):
        seeds = [seed * 100003 + k * 1009 + i for i in range(n)]
        out.extend(check_family(fam, seeds, tol_rel, tol_abs))
    return out
