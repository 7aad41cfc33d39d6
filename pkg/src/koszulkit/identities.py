"""Randomised identity suites for the Koszul forms and curvature tensors.

Each check compares two independently assembled sides of an identity on a
random degree-2 polynomial metric and random degree-2 polynomial fields in
2-4 dimensions.  Every quantity is pointwise in second-order data, and a
quadratic is fixed by its 2-jet, so samples draw the jets at the point
directly.  Results use the same ``CaseRecord`` rows as the
catalog comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .connections import (ap_koszul_jet, apply_structure, koszul_jet,
                          ssm_koszul_jet, ssnm_koszul_jet)
from .curvature import (ap_riemann_jet, christoffel_tensor, riemann_jet, ssm_riemann_jet,
                        ssnm_riemann_jet)
from .jets import Jet, bracket, derive, jeinsum, pair
from .verify import CaseRecord

__all__ = ["Sample", "sample", "reflection_jet", "koszul_identities", "curvature_identities", "second_oracle",
           "observations", "KOSZUL_CHECKS", "CURVATURE_CHECKS"]


@dataclass
class Sample:
    """Jets of a random metric, fields X, Y, Z, T, P, a scalar f and a reflection J at one point."""

    dim: int
    G: Jet
    gplus: np.ndarray
    X: Jet
    Y: Jet
    Z: Jet
    T: Jet
    P: Jet
    f: Jet
    J: Jet
    memo: dict = field(default_factory=dict, repr=False)

    def first_order(self) -> "Sample":
        """Koszul values only need 1-jets of their inputs."""
        cut = {k: getattr(self, k).truncate(1) for k in ("G", "X", "Y", "Z", "T", "P", "f", "J")}
        return replace(self, memo={}, **cut)


def _poly_jet(rng: np.random.Generator, shape: tuple, n: int, scale: float) -> Jet:
    """2-jet of a random degree-2 polynomial (a quadratic is determined by its 2-jet)."""
    val = rng.uniform(-scale, scale, shape)
    grad = rng.uniform(-scale, scale, shape + (n,))
    h = rng.uniform(-scale, scale, shape + (n, n))
    return Jet(val, grad, h + np.swapaxes(h, -1, -2))


def _metric_jet(rng: np.random.Generator, n: int) -> Jet:
    while True:
        signs = rng.choice([-1.0, 1.0], size=n, p=[0.3, 0.7])
        G = _poly_jet(rng, (n, n), n, 0.2)
        sym = lambda a: 0.5 * (a + np.swapaxes(a, 0, 1))
        G = Jet(sym(G.val) + np.diag(signs * rng.uniform(1.0, 1.6, n)), sym(G.grad), sym(G.hess))
        sv = np.linalg.svd(G.val, compute_uv=False)
        if sv.min() > 0.3 and sv.max() / sv.min() < 30:
            return G


def sample(seed: int, dim: int) -> Sample:
    rng = np.random.default_rng(seed)
    G = _metric_jet(rng, dim)
    X, Y, Z, T, P = (_poly_jet(rng, (dim,), dim, 0.8) for _ in range(5))
    f = _poly_jet(rng, (), dim, 0.8)
    J = reflection_jet(G, rng)
    return Sample(dim, G, np.linalg.inv(G.val), X, Y, Z, T, P, f, J)


def reflection_jet(G: Jet, rng: np.random.Generator) -> Jet:
    """Jet of the g-reflection J = +-(I - 2 v (g v)^T / g(v, v)) for a random constant v."""
    n = G.val.shape[0]
    while True:
        v = np.round(rng.uniform(-1, 1, n), 3)
        if abs(v @ G.val @ v) > 0.3:
            break
    gv = jeinsum("ij,j->i", G, v)
    vgv = jeinsum("i,i->", gv, v)
    outer = jeinsum("i,j->ij", Jet(v, np.zeros((n, n)), np.zeros((n, n, n))), gv)
    scale = vgv.reciprocal() * -2.0
    J = jeinsum(",ij->ij", scale, outer) + np.eye(n)
    return J * float(rng.choice([-1.0, 1.0]))


def _scaled(f: Jet, V: Jet) -> Jet:
    return jeinsum(",i->i", f, V)


def _v(j) -> float:
    return float(j.val) if isinstance(j, Jet) else float(j)


# each check returns (lhs, rhs)
Check = Callable[[Sample], tuple[float, float]]


def _metric(s: Sample):
    K = lambda a, b, c: koszul_jet(s.G, a, b, c)
    return _v(K(s.X, s.Y, s.Z) + K(s.X, s.Z, s.Y)), _v(derive(s.X, pair(s.G, s.Y, s.Z)))


def _torsion(s: Sample):
    K = lambda a, b, c: koszul_jet(s.G, a, b, c)
    return _v(K(s.X, s.Y, s.Z) - K(s.Y, s.X, s.Z)), _v(pair(s.G, s.Z, bracket(s.X, s.Y)))


def _ssm_metric(s: Sample):
    K = lambda a, b, c: ssm_koszul_jet(s.G, s.P, a, b, c)
    return _v(K(s.X, s.Y, s.Z) + K(s.X, s.Z, s.Y)), _v(derive(s.X, pair(s.G, s.Y, s.Z)))


def _ssm_torsion(s: Sample):
    K = lambda a, b, c: ssm_koszul_jet(s.G, s.P, a, b, c)
    g = lambda a, b: _v(pair(s.G, a, b))
    rhs = (_v(pair(s.G, s.Z, bracket(s.X, s.Y))) + g(s.Y, s.P) * g(s.X, s.Z)
           - g(s.X, s.P) * g(s.Y, s.Z))
    return _v(K(s.X, s.Y, s.Z) - K(s.Y, s.X, s.Z)), rhs


def _ssnm_nonmetric(s: Sample):
    K = lambda a, b, c: ssnm_koszul_jet(s.G, s.P, a, b, c)
    g = lambda a, b: _v(pair(s.G, a, b))
    rhs = (_v(derive(s.X, pair(s.G, s.Y, s.Z))) + g(s.Y, s.P) * g(s.X, s.Z)
           + g(s.Z, s.P) * g(s.X, s.Y))
    return _v(K(s.X, s.Y, s.Z) + K(s.X, s.Z, s.Y)), rhs


def _ap_invariance(s: Sample):
    K = lambda a, b, c: ap_koszul_jet(s.G, s.J, a, b, c)
    JY, JZ = apply_structure(s.J, s.Y), apply_structure(s.J, s.Z)
    return _v(K(s.X, s.Y, s.Z)), _v(K(s.X, JY, JZ))


def _linear_first(s: Sample):
    K = lambda a, b, c: koszul_jet(s.G, a, b, c)
    return _v(K(_scaled(s.f, s.X), s.Y, s.Z)), _v(s.f) * _v(K(s.X, s.Y, s.Z))


def _leibniz_second(s: Sample):
    K = lambda a, b, c: koszul_jet(s.G, a, b, c)
    rhs = _v(s.f) * _v(K(s.X, s.Y, s.Z)) + _v(derive(s.X, s.f)) * _v(pair(s.G, s.Y, s.Z))
    return _v(K(s.X, _scaled(s.f, s.Y), s.Z)), rhs


KOSZUL_CHECKS: dict[str, Check] = {
    "koszul metric compatibility": _metric,
    "koszul torsion": _torsion,
    "ssm metric compatibility": _ssm_metric,
    "ssm torsion": _ssm_torsion,
    "ssnm non-metricity": _ssnm_nonmetric,
    "ap J-invariance": _ap_invariance,
    "koszul linear in first slot": _linear_first,
    "koszul Leibniz in second slot": _leibniz_second,
}


def _curv(kind: str, s: Sample, X, Y, Z, T, P=None, J=None) -> float:
    """Curvature values, memoised on the sample so checks share expansions."""
    P = s.P if P is None else P
    J = s.J if J is None else J
    key = (kind, id(X), id(Y), id(Z), id(T), id(P) if kind in ("ssm", "ssnm") else 0,
           id(J) if kind == "ap" else 0)
    if key not in s.memo:
        if kind == "R":
            v = riemann_jet(s.G, s.gplus, X, Y, Z, T)
        elif kind == "ssm":
            v = ssm_riemann_jet(s.G, s.gplus, P, X, Y, Z, T, plain=_curv("R", s, X, Y, Z, T))
        elif kind == "ssnm":
            v = ssnm_riemann_jet(s.G, s.gplus, P, X, Y, Z, T, plain=_curv("R", s, X, Y, Z, T))
        else:
            v = ap_riemann_jet(s.G, J, s.gplus, X, Y, Z, T)
        s.memo[key] = v
    return s.memo[key]


def _first_pair(kind: str) -> Check:
    return lambda s: (_curv(kind, s, s.X, s.Y, s.Z, s.T), -_curv(kind, s, s.Y, s.X, s.Z, s.T))


def _last_pair(kind: str) -> Check:
    return lambda s: (_curv(kind, s, s.X, s.Y, s.Z, s.T), -_curv(kind, s, s.X, s.Y, s.T, s.Z))


def _zero_like(s: Sample) -> Jet:
    if "zero" not in s.memo:
        V = s.P
        s.memo["zero"] = Jet(np.zeros_like(V.val), np.zeros_like(V.grad), np.zeros_like(V.hess))
    return s.memo["zero"]


def _identity_j(s: Sample) -> Jet:
    if "id" not in s.memo:
        n = s.dim
        s.memo["id"] = Jet(np.eye(n), np.zeros((n, n, n)), np.zeros((n, n, n, n)))
    return s.memo["id"]


def _reduction(kind: str) -> Check:
    def check(s: Sample):
        args = (s.X, s.Y, s.Z, s.T)
        if kind == "ap":
            lhs = _curv("ap", s, *args, J=_identity_j(s))
        else:
            lhs = _curv(kind, s, *args, P=_zero_like(s))
        return lhs, _curv("R", s, *args)
    return check


CURVATURE_CHECKS: dict[str, Check] = {
    "R first-pair antisymmetry": _first_pair("R"),
    "ssm curvature first-pair antisymmetry": _first_pair("ssm"),
    "ssnm curvature first-pair antisymmetry": _first_pair("ssnm"),
    "ap curvature first-pair antisymmetry": _first_pair("ap"),
    "R last-pair antisymmetry": _last_pair("R"),
    "ap curvature last-pair antisymmetry": _last_pair("ap"),
    "ssm curvature with P=0 equals R": _reduction("ssm"),
    "ssnm curvature with P=0 equals R": _reduction("ssnm"),
    "ap curvature with J=id equals R": _reduction("ap"),
}

# reductions are exact up to rounding
_TOL = {name: 1e-12 for name in CURVATURE_CHECKS if "equals R" in name}


def _record(suite: str, name: str, seed: int, dim: int, lhs: float, rhs: float,
            tol_rel: float, tol_abs: float) -> CaseRecord:
    err = abs(lhs - rhs)
    rel = err / abs(rhs) if rhs else (0.0 if err == 0 else math.inf)
    ok = math.isfinite(err) and err <= max(tol_abs, tol_rel * abs(rhs))
    return CaseRecord(suite, name, name, "", f"dim={dim}", int(seed), float(rhs), float(lhs),
                      float(err), float(rel), bool(ok))


def _run(checks: dict[str, Check], suite: str, n: int, seed: int, tol_abs: float,
         tol: dict[str, float] | None = None, first_order: bool = False) -> list[CaseRecord]:
    """All checks on one shared sample per instance; records are ordered by check."""
    rows: dict[str, list[CaseRecord]] = {name: [] for name in checks}
    for i in range(n):
        s_seed = seed * 1_000_003 + i
        dim = 2 + i % 3
        s = sample(s_seed, dim)
        if first_order:
            s = s.first_order()
        for name, check in checks.items():
            lhs, rhs = check(s)
            rows[name].append(_record(suite, name, s_seed, dim, lhs, rhs, 0.0,
                                      (tol or {}).get(name, tol_abs)))
    return [r for name in checks for r in rows[name]]


def koszul_identities(n: int = 500, seed: int = 0, tol_abs: float = 1e-9) -> list[CaseRecord]:
    return _run(KOSZUL_CHECKS, "koszul-identities", n, seed, tol_abs, first_order=True)


def curvature_identities(n: int = 300, seed: int = 0, tol_abs: float = 1e-8) -> list[CaseRecord]:
    return _run(CURVATURE_CHECKS, "curvature-identities", n, seed, tol_abs, _TOL)


def second_oracle(n: int = 100, seed: int = 0, tol_rel: float = 1e-8,
                  tol_abs: float = 1e-10) -> list[CaseRecord]:
    """Koszul-expansion curvature against Christoffel-symbol curvature on 2-3 dimensional metrics."""
    out = []
    for i in range(n):
        s_seed = seed * 1_000_003 + 77_777 + i
        dim = 2 + i % 2
        s = sample(s_seed, dim)
        lhs = riemann_jet(s.G, s.gplus, s.X, s.Y, s.Z, s.T)
        Rc = christoffel_tensor(s.G.val, s.G.grad, s.G.hess)
        rhs = float(np.einsum("abcd,a,b,c,d->", Rc, s.X.val, s.Y.val, s.Z.val, s.T.val))
        out.append(_record("second-oracle", "koszul expansion vs christoffel", s_seed, dim, lhs, rhs,
                           tol_rel, tol_abs))
    return out


def observations(n: int = 100, seed: int = 0) -> dict[str, float]:
    """Largest residuals of relations that are reported but not asserted."""
    ssm_last = ssm_swap = ssnm_last = 0.0
    for i in range(n):
        s = sample(seed * 1_000_003 + 555_555 + i, 2 + i % 3)
        a = _curv("ssm", s, s.X, s.Y, s.Z, s.T)
        ssm_last = max(ssm_last, abs(a + _curv("ssm", s, s.X, s.Y, s.T, s.Z)))
        ssm_swap = max(ssm_swap, abs(a + _curv("ssm", s, s.Y, s.X, s.T, s.Z)))
        h = _curv("ssnm", s, s.X, s.Y, s.Z, s.T)
        ssnm_last = max(ssnm_last, abs(h + _curv("ssnm", s, s.X, s.Y, s.T, s.Z)))
    return {
        "ssm curvature last-pair antisymmetry residual": ssm_last,
        "ssm curvature R(X,Y,Z,T) + R(Y,X,T,Z) residual": ssm_swap,
        "ssnm curvature last-pair antisymmetry residual": ssnm_last,
    }
