"""Component tables for twisted products B x_b F.

Twisted patterns carry no fiber index.  The twisting function b depends on
both factors; ``dbB`` and ``dbF`` are its base and fiber parts, and g*_B,
g*_F the unwarped factor co-metrics.
"""

from __future__ import annotations

from ..connections import Kind
from .catalog import CATALOG, family

T = "twisted"


def _gsB(c, X, Y, kind=Kind.PLAIN, J=False):
    """g*_B(nabla_X Y, db) or g*_B(nabla_X Y, db o J_B)."""
    return c.gs(c.nab(X, Y, kind), c.dbJ(1, 0) if J else c.dbB(), 0)


def _gsF(c, V, W, kind=Kind.PLAIN, J=False):
    return c.gs(c.nab(V, W, kind), c.dbJ(1, 1) if J else c.dbF(), 1)


def _gsdb(c):
    """b^2 g*_B(db, db) + g*_F(db, db)."""
    return c.b() ** 2 * c.gs(c.dbB(), c.dbB(), 0) + c.gs(c.dbF(), c.dbF(), 1)


def _quad(c, U, V, W, Q):
    return c.g(U, W) * c.g(V, Q) - c.g(V, W) * c.g(U, Q)


def _hess(c, A, B):
    """b AB(b) - 2A(b)B(b) - b g*_F(nabla_A B, db)."""
    b = c.b()
    return b * c.dd(A, B) - 2 * c.d(A) * c.d(B) - b * _gsF(c, A, B)


def _fiber_r(c, U, V, W, Q, coef, shift=None):
    """b^2 R_F + coef (quadratic) + the four Hessian terms; ``shift`` adds to each Hessian term."""
    h = (lambda A, B: _hess(c, A, B)) if shift is None else (lambda A, B: _hess(c, A, B) + shift(A, B))
    return (c.b() ** 2 * c.R(U, V, W, Q) + coef * _quad(c, U, V, W, Q)
            + h(U, W) * c.g(V, Q) + h(V, Q) * c.g(U, W) - h(V, W) * c.g(U, Q) - h(U, Q) * c.g(V, W))


def _xa(c, X, A):
    """bXA(b) - X(b)A(b)."""
    return c.b() * c.dd(X, A) - c.d(X) * c.d(A)


def _koszul_fiber(c, U, V, W):
    """bU(b)g(V, W) + bV(b)g(W, U) - bW(b)g(U, V) + b^2 K_F(U, V, W)."""
    b = c.b()
    return (b * c.d(U) * c.g(V, W) + b * c.d(V) * c.g(W, U) - b * c.d(W) * c.g(U, V)
            + b ** 2 * c.K(U, V, W))


def _bxy(c, X, Y, V, W, kind=Kind.PLAIN):
    """bXY(b)g(V, W) - bg*_B(nabla_X Y, db)g(V, W)."""
    b = c.b()
    return (b * c.dd(X, Y) - b * _gsB(c, X, Y, kind)) * c.g(V, W)


# plain ------------------------------------------------------------------------

K_TW = CATALOG.add(family("plain-koszul/twisted", "plain", "koszul", T, "none", [
    (1, "X Y Z", None, lambda c, X, Y, Z, **_: c.K(X, Y, Z)),
    (2, "X Y W | X W Y | W X Y", None, None),
    (3, "X V W | V X W | -V W X", None, lambda c, X, V, W, **_: c.b() * c.d(X) * c.g(V, W)),
    (4, "U V W", None, lambda c, U, V, W, **_: _koszul_fiber(c, U, V, W)),
]))


def _dot_tw_6(c, V, W, U, Q, **_):
    b, d, g, K = c.b(), c.d, c.g, c.K
    return (_gsdb(c) * g(V, W) * g(U, Q)
            - b * _gsF(c, V, W) * g(U, Q) - b * _gsF(c, U, Q) * g(V, W)
            + b ** 2 * c.dot(V, W, U, Q)
            + b * d(V) * K(U, Q, W) + b * d(W) * K(U, Q, V) + b * d(U) * K(V, W, Q) + b * d(Q) * K(V, W, U)
            + d(V) * d(U) * g(Q, W) + d(V) * d(Q) * g(U, W) + d(W) * d(U) * g(Q, V) + d(W) * d(Q) * g(U, V)
            - 2 * d(U) * d(Q) * g(V, W) - 2 * d(V) * d(W) * g(U, Q))


CONTRACTION_TW = CATALOG.add(family("plain-contraction/twisted", "plain", "contraction", T, "none", [
    (1, "X Y Z T", None, lambda c, X, Y, Z, T, **_: c.dot(X, Y, Z, T)),
    (2, "X Y Z W | X Y W Z", None, None),
    (3, "X Y V W", None, lambda c, X, Y, V, W, **_: -c.b() * _gsB(c, X, Y) * c.g(V, W)),
    (4, "X V Y W | X V W Y | V X Y W | V X W Y", None,
     lambda c, X, V, Y, W, **_: c.d(X) * c.d(Y) * c.g(V, W)),
    (5, "X V W U | V X W U", None, lambda c, X, V, W, U, **_:
        c.d(X) * c.d(W) * c.g(U, V) + c.d(X) * c.d(U) * c.g(V, W) - c.d(X) * c.d(V) * c.g(W, U)
        + c.b() * c.d(X) * c.K(W, U, V)),
    (6, "V W U Q", None, _dot_tw_6),
]))


R_TW = CATALOG.add(family("plain-curvature/twisted", "plain", "curvature", T, "none", [
    (1, "X Y Z T", None, lambda c, X, Y, Z, T, **_: c.R(X, Y, Z, T)),
    (2, "X Y Z W | Z W X Y", None, None),
    (3, "X Y V W", None, None),
    (4, "X V Y W | V X W Y", None, lambda c, X, V, Y, W, **_: _bxy(c, X, Y, V, W)),
    (5, "X U V W", None, lambda c, X, U, V, W, **_:
        _xa(c, X, V) * c.g(U, W) - _xa(c, X, W) * c.g(U, V)),
    (6, "V W U Q", None, lambda c, V, W, U, Q, **_: _fiber_r(c, V, W, U, Q, _gsdb(c))),
]))


# semi-symmetric metric ----------------------------------------------------------

SSM_K_TW_BASE = CATALOG.add(family("ssm-koszul/twisted/P-base", "ssm", "koszul", T, "base", [
    (1, "X Y Z", None, lambda c, X, Y, Z, **_: c.Kb(X, Y, Z)),
    (2, "X Y W | X W Y | W X Y", None, None),
    (3, "X V W", None, lambda c, X, V, W, **_: c.b() * c.d(X) * c.g(V, W)),
    (4, "V X W | -V W X", None, lambda c, X, V, W, **_:
        c.b() * c.d(X) * c.g(V, W) + c.b() ** 2 * c.g(X, c.P) * c.g(V, W)),
    (5, "U V W", None, lambda c, U, V, W, **_: _koszul_fiber(c, U, V, W)),
]))

SSM_K_TW_FIBER = CATALOG.add(family("ssm-koszul/twisted/P-fiber", "ssm", "koszul", T, "fiber", [
    (1, "X Y Z", None, lambda c, X, Y, Z, **_: c.K(X, Y, Z)),
    (2, "X Y W | -X W Y", None, lambda c, X, Y, W, **_: -c.b() ** 2 * c.g(X, Y) * c.g(c.P, W)),
    (3, "W X Y", None, None),
    (4, "X V W | V X W | -V W X", None, lambda c, X, V, W, **_: c.b() * c.d(X) * c.g(V, W)),
    (5, "U V W", None, lambda c, U, V, W, **_:
        _koszul_fiber(c, U, V, W) + c.b() ** 4 * c.g(V, c.P) * c.g(U, W)
        - c.b() ** 4 * c.g(W, c.P) * c.g(U, V)),
]))


def _ssm_r_tw_base_4(c, X, V, Y, W, **_):
    b, P, g = c.b(), c.P, c.g(V, W)
    return (_bxy(c, X, Y, V, W) + b ** 2 * c.K(X, P, Y) * g + b ** 2 * c.g(P, P) * c.g(X, Y) * g
            - b ** 2 * c.g(X, P) * c.g(P, Y) * g + b * c.d(P) * c.g(X, Y) * g)


def _ssm_r_tw_base_6(c, U, V, W, Q, **_):
    b, P = c.b(), c.P
    coef = (b ** 2 * c.gs(c.dbB(), c.dbB(), 0) - c.gs(c.dbF(), c.dbF(), 1) + 2 * b ** 3 * c.d(P)
            + b ** 4 * c.g(P, P))
    return _fiber_r(c, U, V, W, Q, coef)


SSM_R_TW_BASE = CATALOG.add(family("ssm-curvature/twisted/P-base", "ssm", "curvature", T, "base", [
    (1, "X Y Z T", None, lambda c, X, Y, Z, T, **_: c.Rb(X, Y, Z, T)),
    (2, "X Y Z W | Z W X Y", None, None),
    (3, "X Y V W | V W X Y", None, None),
    (4, "X V Y W", None, _ssm_r_tw_base_4),
    (5, "X V U W | U W X V", None, lambda c, X, V, U, W, **_:
        _xa(c, X, U) * c.g(W, V) - _xa(c, X, W) * c.g(U, V)),
    (6, "U V W Q", None, _ssm_r_tw_base_6),
]))


def _ssm_r_tw_fiber_4(c, X, V, Y, W, **_):
    b, P, gxy = c.b(), c.P, c.g(X, Y)
    return (_bxy(c, X, Y, V, W) - b ** 4 * gxy * c.g(V, P) * c.g(P, W)
            + b ** 4 * gxy * c.g(V, W) * c.g(P, P) + b * c.d(V) * gxy * c.g(P, W)
            + b * c.d(P) * gxy * c.g(W, V) - b * c.d(W) * gxy * c.g(V, P)
            + b ** 2 * gxy * c.K(V, P, W))


def _ssm_r_tw_fiber_56(sign):
    def f(c, X, V, U, W, **_):
        b, P = c.b(), c.P
        return (_xa(c, X, U) * c.g(W, V) - _xa(c, X, W) * c.g(U, V)
                + sign * b ** 3 * c.d(X) * (c.g(U, P) * c.g(W, V) - c.g(W, P) * c.g(U, V)))
    return f


def _ssm_r_tw_fiber_7(c, U, V, W, Q, **_):
    b, P, g, d = c.b(), c.P, c.g, c.d
    coef = _gsdb(c) + 2 * b ** 3 * d(P) + b ** 6 * g(P, P)
    return (_fiber_r(c, U, V, W, Q, coef, shift=lambda A, B: b ** 4 * c.K(A, P, B))
            + b ** 3 * d(Q) * (g(U, P) * g(V, W) - g(V, P) * g(U, W))
            + (b ** 6 * g(U, P) - b ** 3 * d(U)) * (g(V, W) * g(P, Q) - g(P, W) * g(V, Q))
            - (b ** 6 * g(V, P) - b ** 3 * d(V)) * (g(U, W) * g(P, Q) - g(P, W) * g(U, Q))
            - b ** 3 * d(W) * (g(U, P) * g(V, Q) - g(V, P) * g(U, Q)))


SSM_R_TW_FIBER = CATALOG.add(family("ssm-curvature/twisted/P-fiber", "ssm", "curvature", T, "fiber", [
    (1, "X Y Z T", None, lambda c, X, Y, Z, T, **_:
        c.R(X, Y, Z, T) + c.b() ** 2 * c.g(c.P, c.P) * (c.g(X, Z) * c.g(Y, T) - c.g(X, T) * c.g(Y, Z))),
    (2, "X Y Z W | -Z W X Y", None, lambda c, X, Y, Z, W, **_:
        (-c.b() * c.d(X) * c.g(Y, Z) + c.b() * c.d(Y) * c.g(X, Z)) * c.g(c.P, W)),
    (3, "X Y V W | V W X Y", None, None),
    (4, "X V Y W", None, _ssm_r_tw_fiber_4),
    (5, "X V U W", None, _ssm_r_tw_fiber_56(1.0)),
    (6, "U W X V", None, lambda c, U, W, X, V, **_: _ssm_r_tw_fiber_56(-1.0)(c, X, V, U, W)),
    (7, "U V W Q", None, _ssm_r_tw_fiber_7),
]))


# semi-symmetric non-metric ------------------------------------------------------

SSNM_K_TW_BASE = CATALOG.add(family("ssnm-koszul/twisted/P-base", "ssnm", "koszul", T, "base", [
    (1, "X Y Z", None, lambda c, X, Y, Z, **_: c.Kh(X, Y, Z)),
    (2, "X Y W | X W Y | W X Y", None, None),
    (3, "X V W | -V W X", None, lambda c, X, V, W, **_: c.b() * c.d(X) * c.g(V, W)),
    (4, "V X W", None, lambda c, X, V, W, **_:
        c.b() * c.d(X) * c.g(V, W) + c.b() ** 2 * c.g(X, c.P) * c.g(V, W)),
    (5, "U V W", None, lambda c, U, V, W, **_: _koszul_fiber(c, U, V, W)),
]))

SSNM_K_TW_FIBER = CATALOG.add(family("ssnm-koszul/twisted/P-fiber", "ssnm", "koszul", T, "fiber", [
    (1, "X Y Z", None, lambda c, X, Y, Z, **_: c.K(X, Y, Z)),
    (2, "X Y W | W X Y", None, None),
    (3, "X W Y", None, lambda c, X, W, Y, **_: c.b() ** 2 * c.g(X, Y) * c.g(W, c.P)),
    (4, "X V W | V X W | -V W X", None, lambda c, X, V, W, **_: c.b() * c.d(X) * c.g(V, W)),
    (5, "U V W", None, lambda c, U, V, W, **_:
        _koszul_fiber(c, U, V, W) + c.b() ** 4 * c.g(V, c.P) * c.g(U, W)),
]))


def _ssnm_r_tw_base_7(c, V, W, U, X, **_):
    b, P = c.b(), c.P
    gxp = c.g(X, P)
    return (-_xa(c, X, V) * c.g(W, U) + _xa(c, X, W) * c.g(U, V)
            - 2 * b * c.d(W) * gxp * c.g(U, V) + 2 * b * c.d(V) * gxp * c.g(U, W)
            + b ** 2 * gxp * (c.K(W, U, V) - c.K(V, U, W)))


SSNM_R_TW_BASE = CATALOG.add(family("ssnm-curvature/twisted/P-base", "ssnm", "curvature", T, "base", [
    (1, "X Y Z T", None, lambda c, X, Y, Z, T, **_: c.Rh(X, Y, Z, T)),
    (2, "X Y Z W | X Y W Z | Z W X Y", None, None),
    (3, "X Y V W | V W X Y", None, None),
    (4, "V X W Y | -X V W Y", None, lambda c, V, X, W, Y, **_:
        _bxy(c, X, Y, V, W) - 2 * c.b() * c.d(X) * c.g(Y, c.P) * c.g(V, W)),
    (5, "V X Y W | -X V Y W", None, lambda c, V, X, Y, W, **_:
        -_bxy(c, X, Y, V, W) - c.b() ** 2 * c.dg(X, Y, c.P) * c.g(V, W)),
    (6, "X U V W | V W X U", None, lambda c, X, U, V, W, **_:
        _xa(c, X, V) * c.g(W, U) - _xa(c, X, W) * c.g(U, V)),
    (7, "V W U X", None, _ssnm_r_tw_base_7),
    (8, "U V W Q", None, lambda c, U, V, W, Q, **_: _fiber_r(c, U, V, W, Q, _gsdb(c))),
]))


def _ssnm_r_tw_fiber_10(c, U, V, W, Q, **_):
    b, P, g, d = c.b(), c.P, c.g, c.d
    return (_fiber_r(c, U, V, W, Q, _gsdb(c))
            + 2 * b ** 3 * d(U) * (g(W, P) * g(V, Q) + g(Q, P) * g(V, W))
            - 2 * b ** 3 * d(V) * (g(W, P) * g(U, Q) + g(Q, P) * g(U, W))
            + b ** 4 * c.dg(U, W, P) * g(V, Q) - b ** 4 * c.dg(V, W, P) * g(U, Q)
            + b ** 4 * g(P, Q) * (c.K(U, W, V) - c.K(V, W, U)))


SSNM_R_TW_FIBER = CATALOG.add(family("ssnm-curvature/twisted/P-fiber", "ssnm", "curvature", T, "fiber", [
    (1, "X Y Z T", None, lambda c, X, Y, Z, T, **_: c.R(X, Y, Z, T)),
    (2, "X Y Z W", None, lambda c, X, Y, Z, W, **_:
        c.b() ** 2 * c.g(W, c.P) * (c.K(X, Z, Y) - c.K(Y, Z, X))),
    (3, "X Y W Z", None, lambda c, X, Y, W, Z, **_:
        2 * c.b() * c.g(W, c.P) * (c.d(X) * c.g(Y, Z) - c.d(Y) * c.g(X, Z))),
    (4, "Z W X Y", None, None),
    (5, "X Y V W | V W X Y", None, None),
    (6, "X V W Y | -V X W Y", None, lambda c, X, V, W, Y, **_:
        -_bxy(c, X, Y, V, W) - 2 * c.b() * c.d(V) * c.g(X, Y) * c.g(W, c.P)
        - c.b() ** 2 * c.dg(V, W, c.P) * c.g(X, Y)),
    (7, "X V Y W | -V X Y W", None, lambda c, X, V, Y, W, **_: _bxy(c, X, Y, V, W)),
    (8, "X V U W | -V X U W", None, lambda c, X, V, U, W, **_:
        _xa(c, X, U) * c.g(W, V) - _xa(c, X, W) * c.g(V, U)
        + 2 * c.b() ** 3 * c.d(X) * (c.g(U, c.P) * c.g(V, W) + c.g(W, c.P) * c.g(U, V))),
    (9, "U W X V | -U W V X", None, lambda c, U, W, X, V, **_:
        _xa(c, X, U) * c.g(W, V) - _xa(c, X, W) * c.g(V, U)),
    (10, "U V W Q", None, _ssnm_r_tw_fiber_10),
]))


# almost product -------------------------------------------------------------------

def _dJ(c, A):
    """(J A)(b)."""
    return c.d(c.J(A))


AP_K_TW = CATALOG.add(family("ap-koszul/twisted", "ap", "koszul", T, "none", [
    (1, "X Y Z", None, lambda c, X, Y, Z, **_: c.Kt(X, Y, Z)),
    (2, "X Y W | X W Y | W X Y", None, None),
    (3, "X V W", None, lambda c, X, V, W, **_: c.b() * c.d(X) * c.g(V, W)),
    (4, "V X W | -V W X", None, lambda c, X, V, W, **_:
        0.5 * (c.b() * c.d(X) * c.g(V, W) + c.b() * _dJ(c, X) * c.g(V, c.J(W)))),
    (5, "U V W", None, lambda c, U, V, W, **_:
        c.b() * c.d(U) * c.g(V, W) + 0.5 * c.b() * c.d(V) * c.g(U, W) - 0.5 * c.b() * c.d(W) * c.g(U, V)
        + 0.5 * c.b() * _dJ(c, V) * c.g(U, c.J(W)) - 0.5 * c.b() * _dJ(c, W) * c.g(U, c.J(V))
        + c.b() ** 2 * c.Kt(U, V, W)),
]))


def _gsdb_j(c):
    """The three db pairings: plain, (db o J, db o J) and (db o J, db), each b^2 g*_B + g*_F."""
    b2 = c.b() ** 2
    dB, dF, jB, jF = c.dbB(), c.dbF(), c.dbJ(1, 0), c.dbJ(1, 1)
    return (b2 * c.gs(dB, dB, 0) + c.gs(dF, dF, 1),
            b2 * c.gs(jB, jB, 0) + c.gs(jF, jF, 1),
            b2 * c.gs(jB, dB, 0) + c.gs(jF, dF, 1))


def _ap_dot_8(c, V, X, W, U, **_):
    b, d, g, J, Kt = c.b(), c.d, c.g, c.J, c.Kt
    dx, djx = d(X), _dJ(c, X)
    return (0.5 * b * dx * Kt(W, U, V) + 0.5 * b * djx * Kt(W, U, J(V))
            + 0.5 * dx * d(W) * g(U, V) + 0.5 * djx * d(W) * g(U, J(V))
            + 0.25 * (dx * d(U) + djx * _dJ(c, U)) * g(W, V)
            - 0.25 * (dx * d(V) + djx * _dJ(c, V)) * g(W, U)
            + 0.25 * (dx * _dJ(c, U) + djx * d(U)) * g(W, J(V))
            - 0.25 * (dx * _dJ(c, V) + djx * d(V)) * g(W, J(U)))


def _ap_dot_9(c, V, W, U, Q, **_):
    b, d, g, J, Kt = c.b(), c.d, c.g, c.J, c.Kt
    dJ = lambda A: _dJ(c, A)
    plain, jj, j1 = _gsdb_j(c)
    gsF = lambda A, B, j: _gsF(c, A, B, Kind.AP, J=j)
    return (0.25 * plain * g(W, V) * g(U, Q) + 0.25 * jj * g(W, J(V)) * g(U, J(Q))
            + 0.25 * j1 * (g(W, V) * g(U, J(Q)) + g(W, J(V)) * g(U, Q))
            + b * d(V) * Kt(U, Q, W) + 0.5 * b * d(W) * Kt(U, Q, V) + b * d(U) * Kt(V, W, Q)
            + 0.5 * b * d(Q) * Kt(V, W, U) + 0.5 * b * dJ(W) * Kt(U, Q, J(V))
            + 0.5 * b * dJ(Q) * Kt(V, W, J(U))
            + d(V) * d(U) * g(Q, W) + 0.5 * d(V) * d(Q) * g(U, W) + 0.5 * d(V) * dJ(Q) * g(U, J(W))
            + 0.5 * d(W) * d(U) * g(Q, V) + 0.5 * dJ(W) * d(U) * g(Q, J(V)) + b ** 2 * c.dott(V, W, U, Q)
            + 0.25 * (d(W) * d(Q) + dJ(W) * dJ(Q)) * g(U, V)
            + 0.25 * (d(W) * dJ(Q) + dJ(W) * d(Q)) * g(U, J(V))
            - 0.25 * (3 * d(V) * d(W) + dJ(V) * dJ(W) + 2 * b * gsF(V, W, False)) * g(U, Q)
            - 0.25 * (3 * d(V) * dJ(W) + dJ(V) * d(W) + 2 * b * gsF(V, W, True)) * g(U, J(Q))
            - 0.25 * (3 * d(U) * d(Q) + dJ(U) * dJ(Q) + 2 * b * gsF(U, Q, False)) * g(V, W)
            - 0.25 * (3 * d(U) * dJ(Q) + dJ(U) * d(Q) + 2 * b * gsF(U, Q, True)) * g(V, J(W)))


AP_DOT_TW = CATALOG.add(family("ap-contraction/twisted", "ap", "contraction", T, "none", [
    (1, "X Y Z T", None, lambda c, X, Y, Z, T, **_: c.dott(X, Y, Z, T)),
    (2, "X Y Z W | X Y W Z", None, None),
    (3, "X Y V W", None, lambda c, X, Y, V, W, **_:
        -0.5 * c.b() * _gsB(c, X, Y, Kind.AP) * c.g(W, V)
        - 0.5 * c.b() * _gsB(c, X, Y, Kind.AP, J=True) * c.g(W, c.J(V))),
    (4, "X V Y W", None, lambda c, X, V, Y, W, **_: c.d(X) * c.d(Y) * c.g(W, V)),
    (5, "X V W Y", None, lambda c, X, V, W, Y, **_:
        0.5 * c.d(X) * c.d(Y) * c.g(W, V) + 0.5 * c.d(X) * _dJ(c, Y) * c.g(W, c.J(V))),
    (6, "V X W Y", None, lambda c, V, X, W, Y, **_:
        0.25 * (c.d(X) * c.d(Y) + _dJ(c, X) * _dJ(c, Y)) * c.g(W, V)
        + 0.25 * (c.d(X) * _dJ(c, Y) + _dJ(c, X) * c.d(Y)) * c.g(W, c.J(V))),
    (7, "X V W U", None, lambda c, X, V, W, U, **_:
        c.b() * c.d(X) * c.Kt(W, U, V) + c.d(X) * c.d(W) * c.g(U, V)
        + 0.5 * c.d(X) * c.d(U) * c.g(W, V) - 0.5 * c.d(X) * c.d(V) * c.g(W, U)
        + 0.5 * c.d(X) * _dJ(c, U) * c.g(W, c.J(V)) - 0.5 * c.d(X) * _dJ(c, V) * c.g(W, c.J(U))),
    (8, "V X W U", None, _ap_dot_8),
    (9, "V W U Q", None, _ap_dot_9),
]))


def _ap_r_4(c, X, V, Y, W, **_):
    b, J = c.b(), c.J
    return (0.5 * b * c.dd(X, Y) * c.g(V, W) - 0.5 * b * _gsB(c, X, Y, Kind.AP) * c.g(V, W)
            + 0.5 * b * c.dd(X, J(Y)) * c.g(V, J(W))
            - 0.5 * b * _gsB(c, X, Y, Kind.AP, J=True) * c.g(V, J(W)))


def _ap_r_5(c, X, V, W, U, **_):
    b, d, g, J = c.b(), c.d, c.g, c.J
    return (-0.5 * (d(X) * d(W) - b * c.dd(X, W)) * g(V, U)
            - 0.5 * (d(X) * _dJ(c, W) - b * c.dd(X, J(W))) * g(V, J(U))
            + 0.5 * (d(X) * d(U) - b * c.dd(X, U)) * g(V, W)
            + 0.5 * (d(X) * _dJ(c, U) - b * c.dd(X, J(U))) * g(V, J(W)))


def _ap_r_6(c, W, U, X, V, **_):
    b, d, g, J, K = c.b(), c.d, c.g, c.J, c.K
    dx, djx = d(X), _dJ(c, X)
    return (0.25 * (2 * b * c.dd(W, X) - dx * d(W) - djx * _dJ(c, W)) * g(U, V)
            + 0.25 * (2 * b * c.dd(W, J(X)) - dx * _dJ(c, W) - djx * d(W)) * g(U, J(V))
            - 0.25 * (2 * b * c.dd(U, X) - dx * d(U) - djx * _dJ(c, U)) * g(W, V)
            - 0.25 * (2 * b * c.dd(U, J(X)) - dx * _dJ(c, U) - djx * d(U)) * g(W, J(V))
            - 0.25 * b * dx * (K(U, V, W) - K(W, V, U) - K(U, J(V), J(W)) + K(W, J(V), J(U)))
            + 0.25 * b * djx * (K(U, V, J(W)) - K(W, V, J(U)) - K(U, J(V), W) + K(W, J(V), U)))


def _ap_r_9(c, U, V, W, Q, **_):
    b, d, g, J, K = c.b(), c.d, c.g, c.J, c.K
    dJ = lambda A: _dJ(c, A)
    plain, jj, j1 = _gsdb_j(c)

    def a(S, T_):
        return 3 * d(S) * d(T_) - 2 * b * c.dd(S, T_) + dJ(S) * dJ(T_) + 2 * b * _gsF(c, S, T_, Kind.AP)

    def aj(S, T_):
        return (3 * d(S) * dJ(T_) - 2 * b * c.dd(S, J(T_)) + dJ(S) * d(T_)
                + 2 * b * _gsF(c, S, T_, Kind.AP, J=True))

    def k4(A, B, D, sw):
        # K(A, B, D) - K(D, B, A) - K(A, JB, JD) + K(D, JB, JA), or its J-mixed variant
        if not sw:
            return K(A, B, D) - K(D, B, A) - K(A, J(B), J(D)) + K(D, J(B), J(A))
        return K(A, B, J(D)) - K(D, B, J(A)) - K(A, J(B), D) + K(D, J(B), A)

    return (b ** 2 * c.Rt(U, V, W, Q) + 0.25 * plain * _quad(c, U, V, W, Q)
            + 0.25 * jj * (g(U, J(W)) * g(V, J(Q)) - g(V, J(W)) * g(U, J(Q)))
            + 0.25 * j1 * (g(U, J(W)) * g(V, Q) - g(V, J(W)) * g(U, Q) + g(U, W) * g(V, J(Q))
                           - g(V, W) * g(U, J(Q)))
            - 0.25 * a(U, W) * g(V, Q) - 0.25 * aj(U, W) * g(V, J(Q))
            - 0.25 * a(V, Q) * g(U, W) - 0.25 * aj(V, Q) * g(U, J(W))
            + 0.25 * a(V, W) * g(U, Q) + 0.25 * aj(V, W) * g(U, J(Q))
            + 0.25 * a(U, Q) * g(V, W) + 0.25 * aj(U, Q) * g(V, J(W))
            + 0.25 * b * d(Q) * k4(V, W, U, False) - 0.25 * b * dJ(Q) * k4(V, W, U, True)
            - 0.25 * b * d(W) * k4(V, Q, U, False) + 0.25 * b * dJ(W) * k4(V, Q, U, True))


AP_R_TW = CATALOG.add(family("ap-curvature/twisted", "ap", "curvature", T, "none", [
    (1, "X Y Z T", None, lambda c, X, Y, Z, T, **_: c.Rt(X, Y, Z, T)),
    (2, "X Y Z W | Z W X Y", None, None),
    (3, "X Y V W | V W X Y", None, None),
    (4, "X V Y W", None, _ap_r_4),
    (5, "X V W U", None, _ap_r_5),
    (6, "W U X V", None, _ap_r_6),
    (9, "U V W Q", None, _ap_r_9),
]))
