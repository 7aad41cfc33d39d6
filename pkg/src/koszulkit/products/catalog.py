"""Closed-form component tables for Koszul forms and curvatures of products.

Each ``Family`` is one table: a connection kind, an object (Koszul form,
curvature or a covariant contraction of two Koszul 1-forms), a product type
and a location for P.  A family holds numbered ``Item`` entries.  An item
lists one or more argument patterns that share a value up to sign, an index
condition and a formula.

Patterns are written with role letters.  Base roles are X, Y, Z, T; fiber
roles are U, V, W, Q followed by an index variable (``Vi``).  A leading ``-``
flips the sign of that pattern.  Conditions chain index variables with ``=``
and ``!=`` (``"i=j!=k=l"``: i and j equal, k and l equal, the two groups
distinct); ``" or "`` separates alternatives.  ``l`` is the fiber holding P.
Items flagged as fallbacks apply to their patterns when no other item does.

Formulas receive an evaluation context ``c`` plus the roles and indices as
keyword arguments.  The context exposes warpings, factor metrics and
factor-intrinsic Koszul forms and curvatures at one point.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional, Sequence

import numpy as np

from ..connections import (Kind, ProductStructure, ap_koszul_jet, apply_structure,
                           basis_jet, koszul_jet, ssm_koszul_jet, ssnm_koszul_jet)
from ..curvature import contract4, curvature_tensor, ssm_riemann_jet, ssnm_riemann_jet
from ..errors import CaseMismatch, SpecMismatch
from ..jets import Jet, derive, pair
from ..manifold import ExactInverse
from . import LiftedField, ProductManifold, Tag

__all__ = [
    "Obj", "Product", "CatalogKey", "NotCovered", "Item", "Family", "Catalog",
    "Context", "Arg", "closed_form", "CATALOG", "BASE_ROLES", "FIBER_ROLES",
]

BASE_ROLES = frozenset("XYZT")
FIBER_ROLES = frozenset("UVWQ")


class Obj(str, enum.Enum):
    KOSZUL = "koszul"
    CURVATURE = "curvature"
    CONTRACTION = "contraction"

    @property
    def arity(self) -> int:
        return 3 if self is Obj.KOSZUL else 4


class Product(str, enum.Enum):
    WARPED = "warped"
    TWISTED = "twisted"


class _NotCovered:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "NotCovered"

    def __bool__(self) -> bool:
        return False


NotCovered = _NotCovered()


@dataclass(frozen=True)
class CatalogKey:
    connection: Kind
    obj: Obj
    product: Product
    p_location: Optional[Tag]  # None, the base tag, or a fiber tag
    arg_tags: tuple[Tag, ...]

    def __post_init__(self):
        object.__setattr__(self, "connection", Kind(self.connection))
        object.__setattr__(self, "obj", Obj(self.obj))
        object.__setattr__(self, "product", Product(self.product))
        if self.p_location is not None:
            object.__setattr__(self, "p_location", Tag.parse(self.p_location))
        tags = tuple(Tag.parse(t) for t in self.arg_tags)
        object.__setattr__(self, "arg_tags", tags)
        if len(tags) != self.obj.arity:
            raise CaseMismatch(f"{self.obj.value} takes {self.obj.arity} arguments, key has {len(tags)}")
        needs_p = self.connection in (Kind.SSM, Kind.SSNM)
        if needs_p != (self.p_location is not None):
            raise CaseMismatch(f"P location {'required' if needs_p else 'not allowed'} for {self.connection.value}")

    @property
    def p_where(self) -> str:
        if self.p_location is None:
            return "none"
        return "base" if self.p_location.is_base else "fiber"

    def __str__(self) -> str:
        p = "-" if self.p_location is None else str(self.p_location)
        return (f"{self.connection.value}/{self.obj.value}/{self.product.value}/P={p}/"
                + ",".join(str(t) for t in self.arg_tags))


# patterns and conditions ------------------------------------------------------

@dataclass(frozen=True)
class Pattern:
    sign: float
    roles: tuple[tuple[str, Optional[str]], ...]  # (role letter, index variable)

    @classmethod
    def parse(cls, text: str, twisted: bool) -> "Pattern":
        text = text.strip()
        sign = 1.0
        if text.startswith("-"):
            sign, text = -1.0, text[1:].strip()
        roles = []
        for tok in text.split():
            letter, var = tok[0], tok[1:] or None
            if letter in BASE_ROLES:
                if var:
                    raise ValueError(f"base role {tok!r} takes no index")
            elif letter in FIBER_ROLES:
                if twisted:
                    if var:
                        raise ValueError(f"twisted role {tok!r} takes no index")
                    var = "_f"
                elif not var:
                    raise ValueError(f"fiber role {tok!r} needs an index")
            else:
                raise ValueError(f"unknown role {tok!r}")
            roles.append((letter, var))
        if len({r for r, _ in roles}) != len(roles):
            raise ValueError(f"repeated role in {text!r}")
        return cls(sign, tuple(roles))

    @property
    def shape(self) -> tuple[bool, ...]:
        """True where the argument is a fiber field."""
        return tuple(r in FIBER_ROLES for r, _ in self.roles)

    def bind(self, tags: Sequence[Tag]) -> Optional[dict[str, int]]:
        if len(tags) != len(self.roles):
            return None
        env: dict[str, int] = {}
        for (role, var), tag in zip(self.roles, tags):
            if role in BASE_ROLES:
                if not tag.is_base:
                    return None
                continue
            if tag.is_base:
                return None
            if env.setdefault(var, tag.index) != tag.index:
                return None
        return env

    def text(self) -> str:
        body = ", ".join(r + (v if v and v != "_f" else "") for r, v in self.roles)
        return ("-" if self.sign < 0 else "") + f"({body})"


def _parse_condition(text: Optional[str]) -> Optional[tuple[tuple[frozenset, ...], ...]]:
    if text is None:
        return None
    alts = []
    for alt in text.split(" or "):
        groups = tuple(frozenset(g.split("=")) for g in alt.replace(" ", "").split("!="))
        alts.append(groups)
    return tuple(alts)


def _holds(cond, env: dict[str, int]) -> bool:
    if cond is None:
        return True
    for groups in cond:
        vals = []
        ok = True
        for grp in groups:
            vs = {env[v] for v in grp}
            if len(vs) != 1:
                ok = False
                break
            vals.append(vs.pop())
        if ok and len(set(vals)) == len(vals):
            return True
    return False


@dataclass(frozen=True, eq=False)
class Item:
    number: int
    patterns: tuple[Pattern, ...]
    condition: Optional[tuple]
    formula: Optional[Callable]  # None means the item value is 0
    fallback: bool = False
    note: str = ""

    def variables(self) -> set[str]:
        return {v for p in self.patterns for _, v in p.roles if v}


@dataclass(frozen=True, eq=False)
class Family:
    name: str
    connection: Kind
    obj: Obj
    product: Product
    p_where: str  # "none", "base" or "fiber"
    items: tuple[Item, ...]

    def label(self, item: Item) -> str:
        return f"{self.name} ({item.number})"

    def item(self, number: int) -> Item:
        for it in self.items:
            if it.number == number:
                return it
        raise KeyError(number)

    def shapes(self) -> set[tuple[bool, ...]]:
        return {p.shape for it in self.items for p in it.patterns}

    def matches(self, tags: Sequence[Tag], l: Optional[int]) -> list[tuple[Item, Pattern, dict]]:
        """Every (item, pattern) applying to ``tags``; fallbacks only if nothing else does."""
        out = []
        for fallback in (False, True):
            for it in self.items:
                if it.fallback != fallback:
                    continue
                for pat in it.patterns:
                    env = pat.bind(tags)
                    if env is None:
                        continue
                    if l is not None:
                        env["l"] = l
                    if _holds(it.condition, env):
                        out.append((it, pat, env))
            if out:
                return out
        return out


def family(name: str, connection, obj, product, p_where: str, entries,
           indexed: Optional[bool] = None) -> Family:
    """Build a family from ``(number, patterns, condition, formula[, fallback])`` rows.

    Fiber roles carry an index on warped products unless ``indexed`` is False
    (a single-fiber table written without indices).
    """
    product = Product(product)
    twisted = (product is Product.TWISTED) if indexed is None else not indexed
    items = []
    for row in entries:
        number, pats, cond, formula, *rest = row
        fallback = bool(rest[0]) if rest else False
        patterns = tuple(Pattern.parse(p, twisted) for p in pats.split("|"))
        condition = _parse_condition(cond)
        it = Item(number, patterns, condition, formula, fallback)
        if condition is not None:
            free = {v for alt in condition for grp in alt for v in grp} - it.variables() - {"l"}
            if free:
                raise ValueError(f"{name} ({number}): condition uses unbound {sorted(free)}")
        items.append(it)
    return Family(name, Kind(connection), Obj(obj), product, p_where, tuple(items))


# evaluation context -----------------------------------------------------------

class Arg:
    """A lifted field's jet at the evaluation point, with its factor tag."""

    __slots__ = ("tag", "pj")

    def __init__(self, tag: Tag, pj: Jet):
        self.tag = tag
        self.pj = pj

    @property
    def j(self) -> int:
        return self.tag.index


def _embed(fj: Jet, n: int, sl: slice) -> Jet:
    d = fj.val.shape[0]
    v = np.zeros((n, n))
    g = np.zeros((n, n, n))
    h = np.zeros((n, n, n, n))
    v[sl, sl] = fj.val
    g[sl, sl, sl] = fj.grad
    h[sl, sl, sl, sl] = fj.hess
    assert d == sl.stop - sl.start
    return Jet(v, g, h)


class Context:
    """Factor-level quantities of a product manifold at one point.

    Factor metrics are lifted to the product chart (zero outside their
    block), so factor Koszul forms of lifted fields can use the same jet
    routines as the product.  The factor co-metric is the inverse of the
    factor block, zero elsewhere.
    """

    def __init__(self, manifold: ProductManifold, x, P: Optional[LiftedField] = None,
                 J: Optional[ProductStructure] = None):
        self.M = manifold
        self.x = manifold.chart.point(x, check=False)
        self.n = manifold.chart.dim
        self.P = None if P is None else self.arg(P)
        self._J = None if J is None else J.jet(self.x)
        self._G: dict[int, Jet] = {}
        self._Ginv: dict[int, np.ndarray] = {}
        self._b: dict[int, Jet] = {}
        self._R: dict = {}

    # plumbing
    def arg(self, f: LiftedField) -> Arg:
        return Arg(f.tag, f.field.jet(self.x))

    def G(self, t: int) -> Jet:
        if t not in self._G:
            chart, metric = self.M.factors[t]
            sl = self.M.slices[t]
            self._G[t] = _embed(metric.jet(self.x[sl]), self.n, sl)
        return self._G[t]

    def Ginv(self, t: int) -> np.ndarray:
        if t not in self._Ginv:
            sl = self.M.slices[t]
            out = np.zeros((self.n, self.n))
            out[sl, sl] = ExactInverse().matrix(None, self.x, self.G(t).val[sl, sl])
            self._Ginv[t] = out
        return self._Ginv[t]

    def bjet(self, j: int) -> Jet:
        if j not in self._b:
            self._b[j] = self.M.warpings[j - 1].jet(self.x)
        return self._b[j]

    def _P_on(self, t: int) -> Jet:
        if self.P is not None and self.P.tag.index == t:
            return self.P.pj
        return Jet(np.zeros(self.n), np.zeros((self.n, self.n)), np.zeros((self.n, self.n, self.n)))

    @property
    def Jj(self) -> Jet:
        if self._J is None:
            raise SpecMismatch("this item needs an almost product structure")
        return self._J

    # warpings
    def b(self, j: int = 1) -> float:
        return float(self.bjet(j).val)

    def d(self, A: Arg, j: int = 1) -> float:
        """A(b_j)."""
        return float(derive(A.pj, self.bjet(j)).val)

    def dd(self, A: Arg, B: Arg, j: int = 1) -> float:
        """A(B(b_j))."""
        return float(derive(A.pj, derive(B.pj, self.bjet(j))).val)

    def db(self, j: int = 1, t: int | None = None) -> np.ndarray:
        """db_j as a row of components, optionally restricted to factor ``t``."""
        g = np.array(self.bjet(j).grad, dtype=float)
        if t is None:
            return g
        out = np.zeros(self.n)
        sl = self.M.slices[t]
        out[sl] = g[sl]
        return out

    def dbB(self, j: int = 1) -> np.ndarray:
        return self.db(j, 0)

    def dbF(self, j: int = 1) -> np.ndarray:
        return self.db(j, j)

    def dbJ(self, j: int = 1, t: int = 0) -> np.ndarray:
        """db_j composed with J, restricted to factor ``t``."""
        return self.Jj.val.T @ self.db(j, t)

    def gs(self, a: np.ndarray, b: np.ndarray, t: int = 0) -> float:
        """Factor co-metric g*_t applied to two 1-forms."""
        return float(a @ self.Ginv(t) @ b)

    # metric and structure
    def g(self, A: Arg, B: Arg) -> float:
        """Unwarped factor metric of A's factor."""
        return float(pair(self.G(A.tag.index), A.pj, B.pj).val)

    def dg(self, A: Arg, B: Arg, C: Arg) -> float:
        """A(g_t(B, C)) with t the factor of B."""
        return float(derive(A.pj, pair(self.G(B.tag.index), B.pj, C.pj)).val)

    def J(self, A: Arg) -> Arg:
        return Arg(A.tag, apply_structure(self.Jj, A.pj))

    # factor Koszul forms
    def _form(self, kind: Kind, t: int):
        G = self.G(t)
        if kind is Kind.PLAIN:
            return lambda a, b, c: koszul_jet(G, a, b, c)
        if kind is Kind.SSM:
            Pj = self._P_on(t)
            return lambda a, b, c: ssm_koszul_jet(G, Pj, a, b, c)
        if kind is Kind.SSNM:
            Pj = self._P_on(t)
            return lambda a, b, c: ssnm_koszul_jet(G, Pj, a, b, c)
        Jj = self.Jj
        return lambda a, b, c: ap_koszul_jet(G, Jj, a, b, c)

    def _k(self, kind, A, B, C) -> float:
        return float(self._form(kind, A.tag.index)(A.pj.truncate(1), B.pj.truncate(1), C.pj.truncate(1)).val)

    def K(self, A, B, C):
        return self._k(Kind.PLAIN, A, B, C)

    def Kb(self, A, B, C):
        return self._k(Kind.SSM, A, B, C)

    def Kh(self, A, B, C):
        return self._k(Kind.SSNM, A, B, C)

    def Kt(self, A, B, C):
        return self._k(Kind.AP, A, B, C)

    def nab(self, A: Arg, B: Arg, kind: Kind = Kind.PLAIN) -> np.ndarray:
        """Factor lower covariant derivative of B along A as a row of components."""
        t = A.tag.index
        E = basis_jet(self.n).truncate(1)
        return np.asarray(self._form(Kind(kind), t)(A.pj.truncate(1), B.pj.truncate(1), E).val)

    def nabt(self, A: Arg, B: Arg) -> np.ndarray:
        return self.nab(A, B, Kind.AP)

    def dot(self, A: Arg, B: Arg, C: Arg, D: Arg, kind: Kind = Kind.PLAIN) -> float:
        """Factor contraction K_t(A, B, .) K_t(C, D, .)."""
        t = A.tag.index
        return self.gs(self.nab(A, B, kind), self.nab(C, D, kind), t)

    def dott(self, A, B, C, D) -> float:
        return self.dot(A, B, C, D, Kind.AP)

    # factor curvatures
    def _tensor(self, kind: Kind, t: int) -> np.ndarray:
        key = (kind, t)
        if key not in self._R:
            self._R[key] = curvature_tensor(self._form(kind, t), self.Ginv(t), self.M.slices[t])
        return self._R[key]

    def _r(self, kind: Kind, A, B, C, D) -> float:
        t = A.tag.index
        jets = (A.pj, B.pj, C.pj, D.pj)
        if kind in (Kind.PLAIN, Kind.AP):
            return contract4(self._tensor(kind, t), *jets)
        plain = contract4(self._tensor(Kind.PLAIN, t), *jets)
        fn = ssm_riemann_jet if kind is Kind.SSM else ssnm_riemann_jet
        return fn(self.G(t), self.Ginv(t), self._P_on(t), *jets, plain=plain)

    def R(self, A, B, C, D):
        return self._r(Kind.PLAIN, A, B, C, D)

    def Rb(self, A, B, C, D):
        return self._r(Kind.SSM, A, B, C, D)

    def Rh(self, A, B, C, D):
        return self._r(Kind.SSNM, A, B, C, D)

    def Rt(self, A, B, C, D):
        return self._r(Kind.AP, A, B, C, D)


# registry and dispatch ----------------------------------------------------------

@dataclass
class Catalog:
    families: list[Family] = field(default_factory=list)

    def add(self, fam: Family) -> Family:
        self.families.append(fam)
        return fam

    def find(self, key: CatalogKey) -> list[Family]:
        return [f for f in self.families
                if f.connection is key.connection and f.obj is key.obj
                and f.product is key.product and f.p_where == key.p_where]

    def by_name(self, name: str) -> Family:
        for f in self.families:
            if f.name == name:
                return f
        raise KeyError(name)

    def lookup(self, key: CatalogKey) -> list[tuple[Family, Item, Pattern, dict]]:
        l = None if key.p_location is None or key.p_location.is_base else key.p_location.index
        out = []
        for fam in self.find(key):
            out.extend((fam, it, pat, env) for it, pat, env in fam.matches(key.arg_tags, l))
        return out


def evaluate(fam: Family, item: Item, pat: Pattern, env: dict, ctx: Context,
             args: Sequence[Arg]) -> float:
    if item.formula is None:
        return 0.0
    kw = dict(env)
    kw.pop("_f", None)
    for (role, _), a in zip(pat.roles, args):
        kw[role] = a
    return pat.sign * float(item.formula(ctx, **kw))


def closed_form(key: CatalogKey, manifold: ProductManifold, args: Sequence[LiftedField],
                P_or_J, p, catalog: "Catalog | None" = None):
    """Evaluate the table item selected by ``key``; NotCovered if no table has it.

    Items the tables list as zero in "other cases" evaluate to 0.0.
    """
    from .. import products as _p  # noqa: F401  (ensures the tables are registered)
    cat = catalog or CATALOG
    if len(args) != key.obj.arity:
        raise CaseMismatch(f"{len(args)} arguments for a {key.obj.value} key")
    for a, t in zip(args, key.arg_tags):
        if not isinstance(a, LiftedField):
            raise CaseMismatch("closed forms take lifted fields only")
        if a.tag != t:
            raise CaseMismatch(f"argument tagged {a.tag} where the key says {t}")
    if (manifold.kind == "twisted") != (key.product is Product.TWISTED):
        raise CaseMismatch(f"key is for a {key.product.value} product, manifold is {manifold.kind}")
    P = J = None
    if key.connection in (Kind.SSM, Kind.SSNM):
        if not isinstance(P_or_J, LiftedField) or P_or_J.tag != key.p_location:
            raise CaseMismatch(f"P must be a field lifted from {key.p_location}")
        P = P_or_J
    elif key.connection is Kind.AP:
        if not isinstance(P_or_J, ProductStructure):
            raise CaseMismatch("almost product keys need a structure J")
        J = P_or_J
    hits = cat.lookup(key)
    if not hits:
        return NotCovered
    fam, item, pat, env = hits[0]
    ctx = Context(manifold, p, P, J)
    return evaluate(fam, item, pat, env, ctx, [ctx.arg(a) for a in args])


CATALOG = Catalog()
