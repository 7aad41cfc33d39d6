"""Component tables for multiply warped products.

Every formula is written as printed in the tables; see the catalog module
for the pattern and condition syntax.  Factor quantities (g, K, R and their
variants) are unwarped and intrinsic to the factor of their first argument.
"""

from __future__ import annotations

from .catalog import CATALOG, family

W = "warped"


def _gsdb(c, X, Y, j):
    """g*_B(nabla_X Y, db_j)."""
    return c.gs(c.nab(X, Y), c.dbB(j))


def _quad(c, U, V, W_, Q):
    """g(U, W) g(V, Q) - g(V, W) g(U, Q)."""
    return c.g(U, W_) * c.g(V, Q) - c.g(V, W_) * c.g(U, Q)


# semi-symmetric metric, P on the base -------------------------------------------

SSM_K_BASE = CATALOG.add(family("ssm-koszul/warped/P-base", "ssm", "koszul", W, "base", [
    (1, "X Y Z", None, lambda c, X, Y, Z, **_: c.Kb(X, Y, Z)),
    (2, "X Y Wj | X Wj Y | Wj X Y", None, None),
    (3, "X Vi Wj", "i=j", lambda c, X, V, W, j, **_: c.b(j) * c.d(X, j) * c.g(V, W)),
    (4, "Vi X Wj | -Vi Wj X", "i=j", lambda c, X, V, W, j, **_:
        c.b(j) * c.d(X, j) * c.g(V, W) + c.b(j) ** 2 * c.g(X, c.P) * c.g(V, W)),
    (5, "X Vi Wj | Vi X Wj | Vi Wj X", "i!=j", None),
    (6, "Ui Vj Wk", "i=j=k", lambda c, U, V, W, j, **_: c.b(j) ** 2 * c.K(U, V, W)),
    (7, "Ui Vj Wk", None, None, True),
]))

# semi-symmetric metric, P on fiber l ----------------------------------------------

SSM_K_FIBER = CATALOG.add(family("ssm-koszul/warped/P-fiber", "ssm", "koszul", W, "fiber", [
    (1, "X Y Z", None, lambda c, X, Y, Z, **_: c.K(X, Y, Z)),
    (2, "X Y Wj | -X Wj Y", "j=l", lambda c, X, Y, W, j, **_:
        -c.b(j) ** 2 * c.g(X, Y) * c.g(W, c.P)),
    (3, "X Y Wj | X Wj Y", "j!=l", None),
    (4, "Wj X Y", None, None),
    (5, "X Vi Wj | Vi X Wj | -Vi Wj X", "i=j", lambda c, X, V, W, j, **_:
        c.b(j) * c.d(X, j) * c.g(V, W)),
    (6, "X Vi Wj | Vi X Wj | Vi Wj X", "i!=j", None),
    (7, "Ui Vj Wk", "i=j=k=l", lambda c, U, V, W, j, **_:
        c.b(j) ** 2 * c.K(U, V, W) + c.b(j) ** 4 * c.g(U, W) * c.g(V, c.P)
        - c.b(j) ** 4 * c.g(U, V) * c.g(W, c.P)),
    (8, "Ui Vj Wk | -Ui Wk Vj", "i=j!=k=l", lambda c, U, V, W, j, k, **_:
        -c.b(j) ** 2 * c.b(k) ** 2 * c.g(U, V) * c.g(W, c.P)),
    (9, "Ui Vj Wk", None, None, True),
]))


def _ssm_r_base_4(c, X, V, W, Y, j, **_):
    b, g, P = c.b(j), c.g(V, W), c.P
    return (b * _gsdb(c, X, Y, j) * g - b * c.dd(X, Y, j) * g - b ** 2 * g * c.K(X, P, Y)
            - b * c.d(P, j) * c.g(X, Y) * g + b ** 2 * c.g(X, P) * c.g(Y, P) * g
            - b ** 2 * c.g(X, Y) * c.g(P, P) * g)


def _ssm_r_base_9(c, U, V, W, Q, j, **_):
    b, P = c.b(j), c.P
    db = c.dbB(j)
    return (b ** 2 * c.R(U, V, W, Q)
            + (b ** 2 * c.gs(db, db) + 2 * b ** 3 * c.d(P, j) + b ** 4 * c.g(P, P)) * _quad(c, U, V, W, Q))


def _ssm_r_base_11(c, U, V, W, Q, i, j, **_):
    bi, bj, P = c.b(i), c.b(j), c.P
    return ((bi * bj * c.gs(c.dbB(i), c.dbB(j)) + bi * bj ** 2 * c.d(P, i) + bj * bi ** 2 * c.d(P, j)
             + bi ** 2 * bj ** 2 * c.g(P, P)) * c.g(V, Q) * c.g(U, W))


SSM_R_BASE = CATALOG.add(family("ssm-curvature/warped/P-base", "ssm", "curvature", W, "base", [
    (1, "X Y Z T", None, lambda c, X, Y, Z, T, **_: c.Rb(X, Y, Z, T)),
    (2, "X Y Z Wj | Z Wj X Y", None, None),
    (3, "X Y Vi Wj | Vi Wj X Y", "i=j", None),
    (4, "X Vi Wj Y", "i=j", _ssm_r_base_4),
    (5, "X Y Vi Wj | Vi Wj X Y | X Vi Wj Y", "i!=j", None),
    (6, "X Vi Wj Uk | Wj Uk X Vi", "i=j=k", None),
    (7, "X Vi Wj Uk | X Uk Vi Wj | Wj Uk X Vi | Vi Wj X Uk", "i=j!=k", None),
    (8, "X Vi Wj Uk | Wj Uk X Vi", "i!=j!=k", None),
    (9, "Uk Vi Wj Qs", "i=j=k=s", _ssm_r_base_9),
    (10, "Uk Vi Wj Qs | Wj Qs Uk Vi", "i=j=s!=k", None),
    (11, "Uk Vi Wj Qs", "j=k!=i=s", _ssm_r_base_11),
    (12, "Uk Vi Wj Qs", None, None, True),
]))


def _ssm_r_fiber_5(c, X, V, W, Y, j, **_):
    b, g, P = c.b(j), c.g(V, W), c.P
    return (b * _gsdb(c, X, Y, j) * g - b * c.dd(X, Y, j) * g
            - b ** 2 * c.g(X, Y) * (c.K(V, P, W) + b ** 2 * g * c.g(P, P)
                                    - b ** 2 * c.g(V, P) * c.g(W, P)))


def _ssm_r_fiber_6(c, X, V, W, Y, j, l, **_):
    b, g, P = c.b(j), c.g(V, W), c.P
    # the printed g_{F_j}(P, P) is read as the metric of P's own fiber
    return (b * _gsdb(c, X, Y, j) * g - b * c.dd(X, Y, j) * g
            - b ** 2 * c.b(l) ** 2 * c.g(X, Y) * g * c.g(P, P))


def _ssm_r_fiber_11(c, U, V, W, Q, j, **_):
    b, P = c.b(j), c.P
    db = c.dbB(j)
    g = c.g
    return (b ** 2 * c.R(U, V, W, Q)
            + (b ** 2 * c.gs(db, db) + b ** 6 * g(P, P)) * _quad(c, U, V, W, Q)
            + b ** 4 * g(V, Q) * c.K(U, P, W) - b ** 4 * g(U, Q) * c.K(V, P, W)
            - b ** 4 * g(V, W) * c.K(U, P, Q) + b ** 4 * g(U, W) * c.K(V, P, Q)
            + b ** 6 * g(U, P) * (g(V, W) * g(Q, P) - g(V, Q) * g(W, P))
            - b ** 6 * g(V, P) * (g(U, W) * g(Q, P) - g(U, Q) * g(W, P)))


def _ssm_r_fiber_12(c, U, V, W, Q, j, l, **_):
    b, P = c.b(j), c.P
    db = c.dbB(j)
    return (b ** 2 * c.R(U, V, W, Q)
            + (b ** 2 * c.gs(db, db) + c.b(l) ** 2 * b ** 4 * c.g(P, P)) * _quad(c, U, V, W, Q))


def _ssm_r_fiber_13(c, U, V, W, Q, i, j, **_):
    bi, bj, P = c.b(i), c.b(j), c.P
    return (bi * bj * c.gs(c.dbB(i), c.dbB(j)) * c.g(V, Q) * c.g(U, W)
            + bi ** 2 * bj ** 2 * c.g(U, W) * (c.K(V, P, Q) + bi ** 2 * c.g(P, P) * c.g(V, Q)
                                              - bi ** 2 * c.g(V, P) * c.g(Q, P)))


def _ssm_r_fiber_14(c, U, V, W, Q, i, j, **_):
    bi, bj, P = c.b(i), c.b(j), c.P
    return (bi * bj * c.gs(c.dbB(i), c.dbB(j)) * c.g(V, Q) * c.g(U, W)
            + bi ** 2 * bj ** 2 * c.g(V, Q) * (c.K(U, P, W) + bj ** 2 * c.g(P, P) * c.g(U, W)
                                              - bj ** 2 * c.g(U, P) * c.g(W, P)))


def _ssm_r_fiber_15(c, U, V, W, Q, i, j, l, **_):
    bi, bj, P = c.b(i), c.b(j), c.P
    return (bi * bj * c.gs(c.dbB(i), c.dbB(j)) * c.g(V, Q) * c.g(U, W)
            + bi ** 2 * bj ** 2 * c.b(l) ** 2 * c.g(V, Q) * c.g(U, W) * c.g(P, P))


SSM_R_FIBER = CATALOG.add(family("ssm-curvature/warped/P-fiber", "ssm", "curvature", W, "fiber", [
    (1, "X Y Z T", None, lambda c, X, Y, Z, T, l, **_:
        c.R(X, Y, Z, T) + c.b(l) ** 2 * c.g(X, Z) * c.g(Y, T) * c.g(c.P, c.P)
        - c.b(l) ** 2 * c.g(X, T) * c.g(Y, Z) * c.g(c.P, c.P)),
    (2, "X Y Z Wj | -Z Wj X Y", "j=l", lambda c, X, Y, Z, W, j, **_:
        -c.b(j) * c.d(X, j) * c.g(Y, Z) * c.g(W, c.P) + c.b(j) * c.d(Y, j) * c.g(X, Z) * c.g(W, c.P)),
    (3, "X Y Z Wj | Z Wj X Y", "j!=l", None),
    (4, "X Y Vi Wj | Vi Wj X Y", None, None),
    (5, "X Vi Wj Y", "i=j=l", _ssm_r_fiber_5),
    (6, "X Vi Wj Y", "i=j!=l", _ssm_r_fiber_6),
    (7, "X Vi Wj Y", None, None, True),
    (8, "X Vi Wj Uk | -Wj Uk X Vi", "i=j=k=l", lambda c, X, V, W, U, j, **_:
        c.b(j) ** 3 * c.d(X, j) * (c.g(V, U) * c.g(W, c.P) - c.g(V, W) * c.g(U, c.P))),
    (9, "X Vi Wj Uk | -Wj Uk X Vi", "i=j!=k=l", lambda c, X, V, W, U, j, l, **_:
        -c.b(l) * c.b(j) ** 2 * c.d(X, l) * c.g(U, c.P) * c.g(V, W)),
    (10, "X Vi Wj Uk", None, None, True),
    (11, "Uk Vi Wj Qs", "i=j=k=s=l", _ssm_r_fiber_11),
    (12, "Uk Vi Wj Qs", "i=j=k=s!=l", _ssm_r_fiber_12),
    (13, "Uk Vi Wj Qs", "j=k!=i=s=l", _ssm_r_fiber_13),
    (14, "Uk Vi Wj Qs", "l=j=k!=i=s", _ssm_r_fiber_14),
    (15, "Uk Vi Wj Qs", "k=j!=i=s!=l", _ssm_r_fiber_15),
    (16, "Uk Vi Wj Qs", None, None, True),
]))

# semi-symmetric non-metric ----------------------------------------------------------

SSNM_K_BASE = CATALOG.add(family("ssnm-koszul/warped/P-base", "ssnm", "koszul", W, "base", [
    (1, "X Y Z", None, lambda c, X, Y, Z, **_: c.Kh(X, Y, Z)),
    (2, "X Y Wj | X Wj Y | Wj X Y", None, None),
    (3, "X Vi Wj | -Vi Wj X", "i=j", lambda c, X, V, W, j, **_: c.b(j) * c.d(X, j) * c.g(V, W)),
    (4, "Vi X Wj", "i=j", lambda c, X, V, W, j, **_:
        c.b(j) * c.d(X, j) * c.g(V, W) + c.b(j) ** 2 * c.g(X, c.P) * c.g(V, W)),
    (5, "X Vi Wj | Vi X Wj | Vi Wj X", "i!=j", None),
    (6, "Ui Vj Wk", "i=j=k", lambda c, U, V, W, j, **_: c.b(j) ** 2 * c.K(U, V, W)),
    (7, "Ui Vj Wk", None, None, True),
]))

SSNM_K_FIBER = CATALOG.add(family("ssnm-koszul/warped/P-fiber", "ssnm", "koszul", W, "fiber", [
    (1, "X Y Z", None, lambda c, X, Y, Z, **_: c.K(X, Y, Z)),
    (2, "X Y Wj | Wj X Y", "j=l", None),
    (3, "X Wj Y", "j=l", lambda c, X, W, Y, j, **_: c.b(j) ** 2 * c.g(X, Y) * c.g(W, c.P)),
    (4, "X Y Wj | X Wj Y | Wj X Y", "j!=l", None),
    (5, "X Vi Wj | Vi X Wj | -Vi Wj X", "i=j", lambda c, X, V, W, j, **_:
        c.b(j) * c.d(X, j) * c.g(V, W)),
    (6, "X Vi Wj | Vi X Wj | Vi Wj X", "i!=j", None),
    (7, "Ui Vj Wk", "i=j=k=l", lambda c, U, V, W, j, **_:
        c.b(j) ** 2 * c.K(U, V, W) + c.b(j) ** 4 * c.g(U, W) * c.g(V, c.P)),
    (8, "Ui Vj Wk", "i=j=k!=l", lambda c, U, V, W, j, **_: c.b(j) ** 2 * c.K(U, V, W)),
    (9, "Ui Wk Vj", "i=j!=k=l", lambda c, U, V, W, j, k, **_:
        c.b(j) ** 2 * c.b(k) ** 2 * c.g(U, V) * c.g(W, c.P)),
    (10, "Ui Vj Wk", None, None, True),
]))


def _ssnm_r_base_4(c, X, V, W, Y, j, **_):
    b, g = c.b(j), c.g(V, W)
    return (b * c.dd(X, Y, j) * g - b * _gsdb(c, X, Y, j) * g
            - 2 * b * c.d(X, j) * c.g(Y, c.P) * g)


def _ssnm_r_base_5(c, X, V, Y, W, j, **_):
    b, g = c.b(j), c.g(V, W)
    return (-b * c.dd(X, Y, j) * g + b * _gsdb(c, X, Y, j) * g
            - b ** 2 * c.dg(X, Y, c.P) * g)


def _pair_term(c, U, V, W, Q, i, j):
    return c.b(i) * c.b(j) * c.gs(c.dbB(i), c.dbB(j)) * c.g(V, Q) * c.g(U, W)


SSNM_R_BASE = CATALOG.add(family("ssnm-curvature/warped/P-base", "ssnm", "curvature", W, "base", [
    (1, "X Y Z T", None, lambda c, X, Y, Z, T, **_: c.Rh(X, Y, Z, T)),
    (2, "X Y Z Wj | X Y Wj Z | Z Wj X Y", None, None),
    (3, "X Y Vi Wj | Vi Wj X Y", "i=j", None),
    (4, "Vi X Wj Y | -X Vi Wj Y", "i=j", _ssnm_r_base_4),
    (5, "Vi X Y Wj | -X Vi Y Wj", "i=j", _ssnm_r_base_5),
    (6, "X Y Vi Wj | Vi Wj X Y | X Vi Wj Y | X Vi Y Wj", "i!=j", None),
    (7, "X Vi Wj Uk | Wj Uk X Vi", "i=j=k", None),
    (8, "Wj Uk Vi X", "i=j=k", lambda c, W, U, V, X, j, **_:
        c.b(j) ** 2 * c.g(X, c.P) * (c.K(W, V, U) - c.K(U, V, W))),
    (9, "X Vi Wj Uk | Wj Uk X Vi | Wj Uk Vi X", None, None, True),
    (10, "Uk Vi Wj Qs", "i=j=k=s", lambda c, U, V, W, Q, j, **_:
        c.b(j) ** 2 * c.R(U, V, W, Q) + c.b(j) ** 2 * c.gs(c.dbB(j), c.dbB(j)) * _quad(c, U, V, W, Q)),
    (11, "Uk Vi Wj Qs", "k=j!=i=s", lambda c, U, V, W, Q, i, j, **_: _pair_term(c, U, V, W, Q, i, j)),
    (12, "Uk Vi Wj Qs", "k=s!=j=i", lambda c, U, V, W, Q, j, k, **_:
        -c.b(j) * c.b(k) * c.gs(c.dbB(j), c.dbB(k)) * c.g(V, W) * c.g(U, Q)),
    (13, "Uk Vi Wj Qs", None, None, True),
]))


def _ssnm_r_fiber_15(c, U, V, W, Q, j, **_):
    b, P = c.b(j), c.P
    return (b ** 2 * c.R(U, V, W, Q) + b ** 2 * c.gs(c.dbB(j), c.dbB(j)) * _quad(c, U, V, W, Q)
            + b ** 4 * c.g(Q, P) * (c.K(U, W, V) - c.K(V, W, U))
            + b ** 4 * c.dg(U, W, P) * c.g(V, Q) - b ** 4 * c.dg(V, W, P) * c.g(U, Q))


SSNM_R_FIBER = CATALOG.add(family("ssnm-curvature/warped/P-fiber", "ssnm", "curvature", W, "fiber", [
    (1, "X Y Z T", None, lambda c, X, Y, Z, T, **_: c.R(X, Y, Z, T)),
    (2, "X Y Z Wj", "j=l", lambda c, X, Y, Z, W, j, **_:
        c.b(j) ** 2 * c.g(W, c.P) * (c.K(X, Z, Y) - c.K(Y, Z, X))),
    (3, "X Y Wj Z", "j=l", lambda c, X, Y, W, Z, j, **_:
        2 * c.b(j) * c.g(W, c.P) * (c.d(X, j) * c.g(Y, Z) - c.d(Y, j) * c.g(X, Z))),
    (4, "X Wj Y Z | Wj X Y Z", "j=l", None),
    (5, "X Y Z Wj | X Y Wj Z | X Wj Y Z | Wj X Y Z", "j!=l", None),
    (6, "X Y Vi Wj | Vi Wj X Y", None, None),
    (7, "Vi X Wj Y | -X Vi Wj Y", "i=j=l", lambda c, X, V, W, Y, j, **_:
        c.b(j) * c.dd(X, Y, j) * c.g(V, W) - c.b(j) * _gsdb(c, X, Y, j) * c.g(V, W)
        + c.b(j) ** 2 * c.dg(V, W, c.P) * c.g(X, Y)),
    (8, "Vi X Wj Y | -X Vi Wj Y", "i=j!=l", lambda c, X, V, W, Y, j, **_:
        c.b(j) * c.dd(X, Y, j) * c.g(V, W) - c.b(j) * _gsdb(c, X, Y, j) * c.g(V, W)),
    (9, "Vi X Y Wj | -X Vi Y Wj", "i=j=l or i=j!=l", lambda c, X, V, Y, W, j, **_:
        -c.b(j) * c.dd(X, Y, j) * c.g(V, W) + c.b(j) * _gsdb(c, X, Y, j) * c.g(V, W)),
    (10, "Vi X Wj Y | Vi X Y Wj", None, None, True),
    (11, "X Vi Wj Uk", "i=j=k=l", lambda c, X, V, W, U, j, **_:
        2 * c.b(j) ** 3 * c.d(X, j) * (c.g(V, U) * c.g(W, c.P) + c.g(V, W) * c.g(U, c.P))),
    (12, "X Vi Wj Uk", "i=j!=k=l", lambda c, X, V, W, U, j, k, **_:
        2 * c.b(j) * c.b(k) ** 2 * c.d(X, j) * c.g(V, W) * c.g(U, c.P)),
    (13, "X Vi Uk Wj", "i=j!=k=l", lambda c, X, V, U, W, j, k, **_:
        2 * c.b(k) * c.b(j) ** 2 * c.d(X, k) * c.g(V, W) * c.g(U, c.P)),
    (14, "X Vi Wj Uk | Wj Uk X Vi | Wj Uk Vi X", None, None, True),
    (15, "Uk Vi Wj Qs", "i=j=k=s=l", _ssnm_r_fiber_15),
    (16, "Uk Vi Wj Qs", "i=j=k=s!=l", lambda c, U, V, W, Q, j, **_:
        c.b(j) ** 2 * c.R(U, V, W, Q) + c.b(j) ** 2 * c.gs(c.dbB(j), c.dbB(j)) * _quad(c, U, V, W, Q)),
    (17, "Uk Vi Wj Qs", "j=k!=i=s=l or k=j!=i=s!=l", lambda c, U, V, W, Q, i, j, **_:
        _pair_term(c, U, V, W, Q, i, j)),
    (18, "Uk Vi Wj Qs", "l=j=k!=i=s", lambda c, U, V, W, Q, i, j, **_:
        _pair_term(c, U, V, W, Q, i, j) + c.b(i) ** 2 * c.b(j) ** 2 * c.dg(U, W, c.P) * c.g(V, Q)),
    (19, "Uk Vi Wj Qs", "k=s!=i=j=l", lambda c, U, V, W, Q, j, k, **_:
        -c.b(j) * c.b(k) * c.gs(c.dbB(j), c.dbB(k)) * c.g(V, W) * c.g(U, Q)
        - c.b(j) ** 2 * c.b(k) ** 2 * c.dg(V, W, c.P) * c.g(U, Q)),
    (20, "Uk Vi Wj Qs", "l=k=s!=i=j or k=s!=i=j!=l", lambda c, U, V, W, Q, j, k, **_:
        -c.b(j) * c.b(k) * c.gs(c.dbB(j), c.dbB(k)) * c.g(V, W) * c.g(U, Q)),
    (21, "Vi Wj Qs Uk", "l=k!=i=j=s", lambda c, V, W, Q, U, j, k, **_:
        c.b(j) ** 2 * c.b(k) ** 2 * c.g(U, c.P) * (c.K(V, Q, W) - c.K(W, Q, V))),
    (22, "Uk Vi Wj Qs", None, None, True),
]))

# almost product ----------------------------------------------------------------

AP_K = CATALOG.add(family("ap-koszul/warped", "ap", "koszul", W, "none", [
    (1, "X Y Z", None, lambda c, X, Y, Z, **_: c.Kt(X, Y, Z)),
    (2, "X Y Wj | X Wj Y | Wj X Y", None, None),
    (3, "X Vi Wj", "i=j", lambda c, X, V, W, j, **_: c.b(j) * c.d(X, j) * c.g(V, W)),
    (4, "Vi X Wj | -Vi Wj X", "i=j", lambda c, X, V, W, j, **_:
        0.5 * (c.b(j) * c.d(X, j) * c.g(V, W) + c.b(j) * c.d(c.J(X), j) * c.g(V, c.J(W)))),
    (5, "X Vi Wj | Vi X Wj | Vi Wj X", "i!=j", None),
    (6, "Ui Vj Wk", "i=j=k", lambda c, U, V, W, j, **_: c.b(j) ** 2 * c.Kt(U, V, W)),
    (7, "Ui Vj Wk | Ui Wk Vj | Wk Ui Vj", "i=j!=k", None),
    (8, "Ui Vj Wk", "i!=j!=k", None),
]))


def _ap_dot_13(c, V, W, U, Q, j, **_):
    b = c.b(j)
    d, dJ = c.dbB(j), c.dbJ(j, 0)
    J = c.J
    return (0.25 * b ** 2 * (c.gs(d, d) * c.g(W, V) * c.g(U, Q)
                             + c.gs(dJ, d) * c.g(W, J(V)) * c.g(U, Q)
                             + c.gs(d, dJ) * c.g(W, V) * c.g(U, J(Q))
                             + c.gs(dJ, dJ) * c.g(W, J(V)) * c.g(U, J(Q)))
            + b ** 2 * c.dott(V, W, U, Q))


def _ap_dot_15(c, V, W, U, Q, j, k, **_):
    dj, dk = c.dbB(j), c.dbB(k)
    djJ, dkJ = c.dbJ(j, 0), c.dbJ(k, 0)
    J = c.J
    return 0.25 * c.b(j) * c.b(k) * (c.gs(dj, dk) * c.g(W, V) * c.g(U, Q)
                                     + c.gs(djJ, dk) * c.g(W, J(V)) * c.g(U, Q)
                                     + c.gs(dj, dkJ) * c.g(W, V) * c.g(U, J(Q))
                                     + c.gs(djJ, dkJ) * c.g(W, J(V)) * c.g(U, J(Q)))


AP_DOT = CATALOG.add(family("ap-contraction/warped", "ap", "contraction", W, "none", [
    (1, "X Y Z T", None, lambda c, X, Y, Z, T, **_: c.dott(X, Y, Z, T)),
    (2, "X Y Z Wj | X Y Wj Z", None, None),
    (3, "X Y Vi Wj", "i=j", lambda c, X, Y, V, W, j, **_:
        -0.5 * c.b(j) * c.gs(c.nabt(X, Y), c.dbB(j)) * c.g(W, V)
        - 0.5 * c.b(j) * c.gs(c.nabt(X, Y), c.dbJ(j, 0)) * c.g(W, c.J(V))),
    (4, "X Vi Y Wj", "i=j", lambda c, X, V, Y, W, j, **_: c.d(X, j) * c.d(Y, j) * c.g(W, V)),
    (5, "X Vi Wj Y", "i=j", lambda c, X, V, W, Y, j, **_:
        0.5 * c.d(X, j) * c.d(Y, j) * c.g(W, V) + 0.5 * c.d(X, j) * c.d(c.J(Y), j) * c.g(W, c.J(V))),
    (6, "Vi X Wj Y", "i=j", lambda c, V, X, W, Y, j, **_:
        0.25 * c.d(X, j) * c.d(Y, j) * c.g(W, V)
        + 0.25 * c.d(X, j) * c.d(c.J(Y), j) * c.g(W, c.J(V))
        + 0.25 * c.d(c.J(X), j) * c.d(Y, j) * c.g(W, c.J(V))
        + 0.25 * c.d(c.J(X), j) * c.d(c.J(Y), j) * c.g(W, V)),
    (7, "X Y Vi Wj | X Vi Y Wj | X Vi Wj Y | Vi X Y Wj | Vi X Wj Y", "i!=j", None),
    (8, "X Vi Wj Uk", "i=j=k", lambda c, X, V, W, U, j, **_: c.b(j) * c.d(X, j) * c.Kt(W, U, V)),
    (9, "X Vi Wj Uk | X Vi Uk Wj | X Uk Vi Wj", "i=j!=k", None),
    (10, "Vi X Wj Uk", "i=j=k", lambda c, V, X, W, U, j, **_:
        0.5 * c.b(j) * c.d(X, j) * c.Kt(W, U, V) + 0.5 * c.b(j) * c.d(c.J(X), j) * c.Kt(W, U, c.J(V))),
    (11, "Vi X Wj Uk | Vi X Uk Wj | Uk X Vi Wj", "i=j!=k", None),
    (12, "X Vi Wj Uk | Vi X Wj Uk", "i!=j!=k", None),
    (13, "Vi Wj Uk Qs", "i=j=k=s", _ap_dot_13),
    (14, "Vi Wj Uk Qs | Vi Wj Qs Uk", "i=j=s!=k", None),
    (15, "Vi Wj Uk Qs", "i=j!=k=s", _ap_dot_15),
    (16, "Vi Wj Uk Qs", "i=k!=j=s or i=s!=j=k", None),
    (17, "Vi Wj Uk Qs", None, None, True),
]))


def _ap_r_4(c, X, V, Y, W, j, **_):
    b = c.b(j)
    nt = c.nabt(X, Y)
    JW = c.J(W)
    return (0.5 * b * c.dd(X, Y, j) * c.g(V, W) - 0.5 * b * c.gs(nt, c.dbB(j)) * c.g(V, W)
            + 0.5 * b * c.dd(X, c.J(Y), j) * c.g(V, JW) - 0.5 * b * c.gs(nt, c.dbJ(j, 0)) * c.g(V, JW))


def _ap_r_7(c, U, V, X, W, j, **_):
    b, J, K = c.b(j), c.J, c.K
    return (0.25 * b * c.d(X, j) * (-K(V, W, U) + K(U, W, V) + K(V, J(W), J(U)) - K(U, J(W), J(V)))
            - 0.25 * b * c.d(J(X), j) * (-K(V, W, J(U)) + K(U, W, J(V)) + K(V, J(W), U) - K(U, J(W), V)))


def _ap_r_9(c, U, V, W, Q, j, **_):
    b, J, g = c.b(j), c.J, c.g
    d, dJ = c.dbB(j), c.dbJ(j, 0)
    return (b ** 2 * c.Rt(U, V, W, Q)
            + 0.25 * b ** 2 * (c.gs(d, d) * (g(U, W) * g(V, Q) - g(V, W) * g(U, Q))
                               + c.gs(dJ, d) * (g(U, J(W)) * g(V, Q) - g(V, J(W)) * g(U, Q)
                                                + g(U, W) * g(V, J(Q)) - g(V, W) * g(U, J(Q)))
                               + c.gs(dJ, dJ) * (g(U, J(W)) * g(V, J(Q)) - g(V, J(W)) * g(U, J(Q)))))


def _ap_r_10(c, U, V, W, Q, i, j, **_):
    J, g = c.J, c.g
    di, dj = c.dbB(i), c.dbB(j)
    diJ, djJ = c.dbJ(i, 0), c.dbJ(j, 0)
    # the printed J_{F_j} Q_i is read as J applied to Q_i
    return 0.25 * c.b(i) * c.b(j) * (c.gs(di, dj) * g(V, Q) * g(U, W)
                                     + c.gs(diJ, dj) * g(V, J(Q)) * g(U, W)
                                     + c.gs(di, djJ) * g(V, Q) * g(U, J(W))
                                     + c.gs(diJ, djJ) * g(V, J(Q)) * g(U, J(W)))


AP_R = CATALOG.add(family("ap-curvature/warped", "ap", "curvature", W, "none", [
    (1, "X Y Z T", None, lambda c, X, Y, Z, T, **_: c.Rt(X, Y, Z, T)),
    (2, "X Y Z Wj | Z Wj X Y", None, None),
    (3, "X Y Vi Wj | Vi Wj X Y", None, None),
    (4, "X Vi Y Wj", "i=j", _ap_r_4),
    (5, "X Vi Y Wj", "i!=j", None),
    (6, "X Vi Wj Uk", None, None),
    (7, "Uk Vi X Wj", "i=j=k", _ap_r_7),
    (8, "Uk Vi X Wj", None, None, True),
    (9, "Uk Vi Wj Qs", "i=j=k=s", _ap_r_9),
    (10, "Uk Vi Wj Qs", "j=k!=i=s", _ap_r_10),
    (11, "Uk Vi Wj Qs", None, None, True),
]))
