"""Riemann-type curvature tensors built from Koszul forms.

The plain and almost-product tensors use the Koszul expansion

    X(K(Y,Z,T)) - Y(K(X,Z,T)) - K([X,Y],Z,T)
        + g*(D_X Z, D_Y T) - g*(D_Y Z, D_X T)

where ``D_X Z`` is the lower covariant derivative.  The semi-symmetric
tensors are obtained from the plain one through correction terms, because
no standalone expansion for those connections acting on 1-forms exists.

``christoffel_riemann`` is an independent check that goes through the
inverse metric and connection coefficients.
"""

from __future__ import annotations

import enum
from typing import Callable

import numpy as np

from .connections import (ProductStructure, _check_involution, ap_koszul_jet,
                          basis_jet, koszul_jet, ssm_koszul_jet, ssnm_koszul_jet)
from .jets import Jet, bracket, derive, pair
from .manifold import CoMetricRule, MetricField, Point, VectorField, _same_chart

__all__ = [
    "CurvatureKind", "riemann", "ssm_riemann", "ssnm_riemann", "ap_riemann",
    "christoffel_riemann", "expansion_jet", "riemann_jet", "ssm_riemann_jet",
    "ssnm_riemann_jet", "ap_riemann_jet", "curvature_tensor", "contract4", "basis_axes",
]

Form = Callable[[Jet, Jet, Jet], Jet]


class CurvatureKind(str, enum.Enum):
    R_PLAIN = "plain"
    R_SSM = "ssm"
    R_SSNM = "ssnm"
    R_AP = "ap"


def _out(v):
    v = np.asarray(v)
    return float(v) if v.ndim == 0 else v


def _contract(a: np.ndarray, gplus: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.einsum("...i,ij,...j->...", a, gplus, b)


def expansion_jet(form: Form, gplus: np.ndarray, X: Jet, Y: Jet, Z: Jet, T: Jet):
    """Koszul expansion of the curvature for an arbitrary Koszul-type form.

    Field jets may carry broadcastable batch axes; the result then is an array.
    """
    E = _basis_for(len(gplus), max(a.val.ndim - 1 for a in (X, Y, Z, T)))
    head = (derive(X, form(Y, Z, T)) - derive(Y, form(X, Z, T))
            - form(bracket(X, Y), Z, T)).val
    # the contraction terms only need values, so first-order data suffices
    X1, Y1, Z1, T1 = (a.truncate(1) for a in (X, Y, Z, T))
    xz = _lift_batch(form(X1, Z1, E).val)
    yt = _lift_batch(form(Y1, T1, E).val)
    yz = _lift_batch(form(Y1, Z1, E).val)
    xt = _lift_batch(form(X1, T1, E).val)
    return _out(head + _contract(xz, gplus, yt) - _contract(yz, gplus, xt))


def _basis_for(n: int, batch_ndim: int) -> Jet:
    """First-order basis jet with its basis axis ahead of ``batch_ndim`` singleton axes."""
    E = basis_jet(n)
    shape = (n,) + (1,) * batch_ndim
    return Jet(E.val.reshape(shape + (n,)), E.grad.reshape(shape + (n, n)))


def basis_axes(n: int, k: int, count: int = 4) -> Jet:
    """Coordinate fields laid along batch axis ``k`` of ``count`` axes (for tensor components)."""
    shape = tuple(n if a == k else 1 for a in range(count))
    return Jet(np.eye(n).reshape(shape + (n,)), np.zeros(shape + (n, n)), np.zeros(shape + (n, n, n)))


def _lift_batch(a: np.ndarray) -> np.ndarray:
    """Move the basis axis of a batched 1-form to the end."""
    return np.moveaxis(a, 0, -1)


def riemann_jet(G: Jet, gplus: np.ndarray, X, Y, Z, T):
    return expansion_jet(lambda a, b, c: koszul_jet(G, a, b, c), gplus, X, Y, Z, T)


def ap_riemann_jet(G: Jet, J: Jet, gplus: np.ndarray, X, Y, Z, T):
    return expansion_jet(lambda a, b, c: ap_koszul_jet(G, J, a, b, c), gplus, X, Y, Z, T)


def _g(G: Jet, A: Jet, B: Jet):
    return pair(G, A.truncate(0), B.truncate(0)).val


def ssm_riemann_jet(G: Jet, gplus: np.ndarray, P, X, Y, Z, T, plain=None):
    R = riemann_jet(G, gplus, X, Y, Z, T) if plain is None else plain
    K = lambda a, b, c: koszul_jet(G, a.truncate(1), b.truncate(1), c.truncate(1)).val
    Kb = lambda a, b, c: ssm_koszul_jet(G, P, a.truncate(1), b.truncate(1), c.truncate(1)).val
    g = lambda a, b: _g(G, a, b)
    return _out(R - g(Y, P) * g(X, Z) * g(P, T) + g(X, P) * g(Y, Z) * g(P, T)
                + Kb(X, P, Z) * g(Y, T) - Kb(Y, P, Z) * g(X, T)
                - K(X, P, T) * g(Y, Z) + K(Y, P, T) * g(X, Z))


def ssnm_riemann_jet(G: Jet, gplus: np.ndarray, P, X, Y, Z, T, plain=None):
    R = riemann_jet(G, gplus, X, Y, Z, T) if plain is None else plain
    Kh = lambda a, b, c: ssnm_koszul_jet(G, P, a.truncate(1), b.truncate(1), c.truncate(1)).val
    g = lambda a, b: _g(G, a, b)
    gzp = pair(G, Z.truncate(1), P.truncate(1))
    return _out(R + derive(X.truncate(1), gzp).val * g(Y, T) - derive(Y.truncate(1), gzp).val * g(X, T)
                - Kh(Y, Z, X) * g(P, T) + Kh(X, Z, Y) * g(P, T))


def curvature_tensor(form: Form, gplus: np.ndarray, block: slice | None = None) -> np.ndarray:
    """Components R_abcd of the Koszul expansion on coordinate fields.

    Coordinate fields commute and have constant components, so the expansion
    reduces to the form's components K_abc and their gradient.  Only meaningful
    when the expansion is tensorial (plain, and almost product with an
    isometric J); the semi-symmetric non-metric correction is not tensorial in
    its third slot.  ``block`` restricts every index to a coordinate block
    (for factor data lifted to a product chart); other components are zero.
    """
    n = len(gplus)
    idx = np.arange(n) if block is None else np.arange(n)[block]
    m = len(idx)

    def axes(k):
        shape = tuple(m if a == k else 1 for a in range(3))
        vals = np.zeros((m, n))
        vals[np.arange(m), idx] = 1.0
        return Jet(vals.reshape(shape + (n,)), np.zeros(shape + (n, n)), np.zeros(shape + (n, n, n)))

    K = form(axes(0), axes(1), axes(2))
    dK = K.grad[..., idx]  # dK[b, c, d, a] = d_a K_bcd
    head = np.einsum("bcda->abcd", dK) - np.einsum("acdb->abcd", dK)
    k = K.val
    gi = gplus[np.ix_(idx, idx)]
    # the contracted index runs over the block only; the form's third slot is a block field
    quad = np.einsum("ace,ef,bdf->abcd", k, gi, k)
    R = head + quad - np.einsum("bacd->abcd", quad)
    if block is None:
        return R
    out = np.zeros((n, n, n, n))
    out[np.ix_(idx, idx, idx, idx)] = R
    return out


def contract4(R: np.ndarray, X: Jet, Y: Jet, Z: Jet, T: Jet) -> float:
    return float(np.einsum("abcd,a,b,c,d->", R, X.val, Y.val, Z.val, T.val))


# public pointwise API ---------------------------------------------------------

def _prep(g: MetricField, rule: CoMetricRule, p: Point, *fields):
    chart = _same_chart(g.chart, *(f.chart for f in fields))
    x = chart.point(p)
    G = g.jet(x)
    gplus = rule.matrix(g, x, G.val)
    return x, G, gplus, [f.jet(x) for f in fields]


def riemann(g: MetricField, rule: CoMetricRule, X: VectorField, Y: VectorField,
            Z: VectorField, T: VectorField, p: Point) -> float:
    """R(X, Y, Z, T) = g(D_X D_Y Z - D_Y D_X Z - D_[X,Y] Z, T) via Koszul forms."""
    _, G, gplus, (Xj, Yj, Zj, Tj) = _prep(g, rule, p, X, Y, Z, T)
    return riemann_jet(G, gplus, Xj, Yj, Zj, Tj)


def ssm_riemann(g: MetricField, rule: CoMetricRule, P: VectorField, X: VectorField,
                Y: VectorField, Z: VectorField, T: VectorField, p: Point) -> float:
    _, G, gplus, (Pj, Xj, Yj, Zj, Tj) = _prep(g, rule, p, P, X, Y, Z, T)
    return ssm_riemann_jet(G, gplus, Pj, Xj, Yj, Zj, Tj)


def ssnm_riemann(g: MetricField, rule: CoMetricRule, P: VectorField, X: VectorField,
                 Y: VectorField, Z: VectorField, T: VectorField, p: Point) -> float:
    _, G, gplus, (Pj, Xj, Yj, Zj, Tj) = _prep(g, rule, p, P, X, Y, Z, T)
    return ssnm_riemann_jet(G, gplus, Pj, Xj, Yj, Zj, Tj)


def ap_riemann(g: MetricField, rule: CoMetricRule, J: ProductStructure, X: VectorField,
               Y: VectorField, Z: VectorField, T: VectorField, p: Point) -> float:
    x, G, gplus, (Xj, Yj, Zj, Tj) = _prep(g, rule, p, X, Y, Z, T)
    _same_chart(g.chart, J.chart)
    Jj = J.jet(x)
    _check_involution(Jj.val)
    return ap_riemann_jet(G, Jj, gplus, Xj, Yj, Zj, Tj)


# independent check ------------------------------------------------------------

def christoffel_tensor(gval: np.ndarray, dg: np.ndarray, ddg: np.ndarray) -> np.ndarray:
    """All-lower components R_abcd = g(R(d_a, d_b) d_c, d_d) from metric derivatives.

    ``dg[i, j, k] = d_k g_ij`` and ``ddg[i, j, k, l] = d_k d_l g_ij``.
    """
    ginv = np.linalg.inv(gval)
    # first-kind symbols [bc, d] = (d_b g_dc + d_c g_db - d_d g_bc) / 2
    first = 0.5 * (np.einsum("dcb->bcd", dg) + np.einsum("dbc->bcd", dg) - np.einsum("bcd->bcd", dg))
    gamma = np.einsum("ed,bcd->ebc", ginv, first)
    # a-derivative of the first-kind symbols
    dfirst = 0.5 * (np.einsum("dcba->abcd", ddg) + np.einsum("dbca->abcd", ddg)
                    - np.einsum("bcda->abcd", ddg))
    dginv = -np.einsum("ep,pqa,qd->aed", ginv, dg, ginv)
    dgamma = np.einsum("aed,bcd->aebc", dginv, first) + np.einsum("ed,abcd->aebc", ginv, dfirst)
    # R^e_{abc} for R(d_a, d_b) d_c
    r_up = (np.einsum("aebc->eabc", dgamma) - np.einsum("beac->eabc", dgamma)
            + np.einsum("fbc,eaf->eabc", gamma, gamma) - np.einsum("fac,ebf->eabc", gamma, gamma))
    return np.einsum("de,eabc->abcd", gval, r_up)


def christoffel_riemann(g: MetricField, X: VectorField, Y: VectorField, Z: VectorField,
                        T: VectorField, p: Point) -> float:
    """R(X, Y, Z, T) from connection coefficients of the inverse metric."""
    chart = _same_chart(g.chart, X.chart, Y.chart, Z.chart, T.chart)
    x = chart.point(p)
    G = g.jet(x)
    R = christoffel_tensor(G.val, G.grad, G.hess)
    return float(np.einsum("abcd,a,b,c,d->", R, X.at(x), Y.at(x), Z.at(x), T.at(x)))
