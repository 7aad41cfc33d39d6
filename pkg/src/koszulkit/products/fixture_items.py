"""Component tables printed for the named space-times M1 to M4.

These are specialisations of the general tables to a one-dimensional base
interval with metric -dt^2: M1 = I x_b F (one fiber), M2 and M3 generalized
Kasner products with warpings phi^{p_j} (two and three fibers), and
M4 = (0, 1) x_b F twisted.  They are kept in their own registries, separate
from ``CATALOG``, so fixture runs can compare the printed specialisation
with the general table and with the definitional pipeline.

Base roles always stand for d/dt.  ``b1``/``b2`` are the first and second
t-derivatives of a warping, taken along the coordinate field d/dt.
"""

from __future__ import annotations

import numpy as np

from ..connections import Kind, basis_jet
from .catalog import Arg, Catalog, Context, family
from . import Tag

__all__ = ["FIXTURE_TABLES", "fixture_tables", "dt_arg"]


# shared quantities ------------------------------------------------------------

def dt_arg(c: Context) -> Arg:
    """The coordinate field d/dt (coordinate 0 of the product chart)."""
    return Arg(Tag(0), basis_jet(c.n)[0])


def b1(c, j=1):
    return c.d(dt_arg(c), j)


def b2(c, j=1):
    t = dt_arg(c)
    return c.dd(t, t, j)


def jb1(c, j=1):
    """J_I(db_j/dt), read as (J_I d/dt)(b_j)."""
    return c.d(c.J(dt_arg(c)), j)


def djb1(c, j=1):
    """d/dt of J_I(db_j/dt)."""
    t = dt_arg(c)
    return c.dd(t, c.J(t), j)


def gI(c, i=1, j=1, Ji=False, Jj=False):
    """g*_I(db_i, db_j), optionally composing either form with J_I."""
    a = c.dbJ(i, 0) if Ji else c.dbB(i)
    b = c.dbJ(j, 0) if Jj else c.dbB(j)
    return c.gs(a, b, 0)


def quad(c, U, V, W, Q):
    return c.g(U, W) * c.g(V, Q) - c.g(V, W) * c.g(U, Q)


def jquad(c, U, V, W, Q):
    """Mixed and J-J quadratic forms of the almost product fiber block."""
    g, J = c.g, c.J
    mixed = g(U, J(W)) * g(V, Q) - g(V, J(W)) * g(U, Q) + g(U, W) * g(V, J(Q)) - g(V, W) * g(U, J(Q))
    jj = g(U, J(W)) * g(V, J(Q)) - g(V, J(W)) * g(U, J(Q))
    return mixed, jj


def k4(c, A, B, D):
    """K(A, B, D) - K(D, B, A) - K(A, JB, JD) + K(D, JB, JA)."""
    K, J = c.K, c.J
    return K(A, B, D) - K(D, B, A) - K(A, J(B), J(D)) + K(D, J(B), J(A))


def k4j(c, A, B, D):
    """K(A, B, JD) - K(D, B, JA) - K(A, JB, D) + K(D, JB, A)."""
    K, J = c.K, c.J
    return K(A, B, J(D)) - K(D, B, J(A)) - K(A, J(B), D) + K(D, J(B), A)


def _ap_mixed(c, U, V, W, j=1):
    """Curvature component with d/dt in the third slot, fiber j."""
    b = c.b(j)
    return (0.25 * b * b1(c, j) * (-c.K(V, W, U) + c.K(U, W, V) + c.K(V, c.J(W), c.J(U))
                                   - c.K(U, c.J(W), c.J(V)))
            - 0.25 * b * jb1(c, j) * (-c.K(V, W, c.J(U)) + c.K(U, W, c.J(V)) + c.K(V, c.J(W), U)
                                      - c.K(U, c.J(W), V)))


def _ap_fiber(c, U, V, W, Q, j=1):
    b = c.b(j)
    mixed, jj = jquad(c, U, V, W, Q)
    return (b ** 2 * c.Rt(U, V, W, Q)
            + 0.25 * b ** 2 * (gI(c, j, j) * quad(c, U, V, W, Q) + gI(c, j, j, Ji=True) * mixed
                               + gI(c, j, j, Ji=True, Jj=True) * jj))


def _tables(*fams) -> Catalog:
    cat = Catalog()
    for f in fams:
        cat.add(f)
    return cat


# M1 = I x_b F -------------------------------------------------------------------

def _m1() -> Catalog:
    W = "warped"

    def fam(name, conn, obj, p_where, rows):
        return family(f"M1 {name}", conn, obj, W, p_where, rows, indexed=False)

    def ssm_r_fiber_6(c, U, V, W, Q, **_):
        b, P, g, K = c.b(), c.P, c.g, c.K
        return (b ** 2 * c.R(U, V, W, Q) + b ** 2 * gI(c) * quad(c, U, V, W, Q)
                + b ** 4 * g(V, Q) * K(U, P, W) - b ** 4 * g(U, Q) * K(V, P, W)
                - b ** 4 * g(V, W) * K(U, P, Q) + b ** 4 * g(U, W) * K(V, P, Q)
                + b ** 6 * g(U, P) * (g(V, W) * g(Q, P) - g(V, Q) * g(W, P))
                - b ** 6 * g(V, P) * (g(U, W) * g(Q, P) - g(U, Q) * g(W, P)))

    def ssnm_r_fiber_8(c, U, V, W, Q, **_):
        b, P, g, K = c.b(), c.P, c.g, c.K
        return (b ** 2 * c.R(U, V, W, Q) + b ** 2 * gI(c) * quad(c, U, V, W, Q)
                + b ** 4 * g(Q, P) * (K(U, W, V) - K(V, W, U))
                + b ** 4 * c.dg(U, W, P) * g(V, Q) - b ** 4 * c.dg(V, W, P) * g(U, Q))

    return _tables(
        fam("ssm-koszul/P-base", "ssm", "koszul", "base", [
            (1, "X Y Z", None, None),
            (2, "X Y W | X W Y | W X Y", None, None),
            (3, "X V W", None, lambda c, V, W, **_: c.b() * b1(c) * c.g(V, W)),
            (4, "V X W | -V W X", None, lambda c, V, W, **_:
                c.b() * b1(c) * c.g(V, W) - c.b() ** 2 * c.g(V, W)),
            (5, "U V W", None, lambda c, U, V, W, **_: c.b() ** 2 * c.K(U, V, W)),
        ]),
        fam("ssm-koszul/P-fiber", "ssm", "koszul", "fiber", [
            (1, "X Y Z", None, None),
            (2, "X Y W | -X W Y", None, lambda c, W, **_: c.b() ** 2 * c.g(W, c.P)),
            (3, "W X Y", None, None),
            (4, "X V W | V X W | -V W X", None, lambda c, V, W, **_: c.b() * b1(c) * c.g(V, W)),
            (5, "U V W", None, lambda c, U, V, W, **_:
                c.b() ** 2 * c.K(U, V, W) + c.b() ** 4 * c.g(U, W) * c.g(V, c.P)
                - c.b() ** 4 * c.g(U, V) * c.g(W, c.P)),
        ]),
        fam("ssm-curvature/P-base", "ssm", "curvature", "base", [
            (1, "X Y Z T", None, None),
            (2, "X Y Z W | X W Y Z", None, None),
            (3, "X Y V W | V W X Y", None, None),
            (4, "X V W Y", None, lambda c, V, W, **_:
                -c.b() * b2(c) * c.g(V, W) + c.b() * b1(c) * c.g(V, W)),
            (5, "X V W U | W U X V", None, None),
            (6, "U V W Q", None, lambda c, U, V, W, Q, **_:
                c.b() ** 2 * c.R(U, V, W, Q)
                + (c.b() ** 2 * gI(c) + 2 * c.b() ** 3 * b1(c) - c.b() ** 4) * quad(c, U, V, W, Q)),
        ]),
        fam("ssm-curvature/P-fiber", "ssm", "curvature", "fiber", [
            (1, "X Y Z T", None, None),
            (2, "X Y Z W | -X W Y Z", None, None),
            (3, "X Y V W | V W X Y", None, None),
            (4, "X V W Y", None, lambda c, V, W, **_:
                -c.b() * b2(c) * c.g(V, W)
                + c.b() ** 2 * (c.K(V, c.P, W) + c.b() ** 2 * c.g(V, W) * c.g(c.P, c.P)
                                - c.b() ** 2 * c.g(V, c.P) * c.g(W, c.P))),
            (5, "X V W U | -W U X V", None, lambda c, V, W, U, **_:
                c.b() ** 3 * b1(c) * (c.g(V, U) * c.g(W, c.P) - c.g(V, W) * c.g(U, c.P))),
            (6, "U V W Q", None, ssm_r_fiber_6),
        ]),
        fam("ssnm-koszul/P-base", "ssnm", "koszul", "base", [
            (1, "X Y Z", None, lambda c, **_: 1.0),
            (2, "X Y W | X W Y | W X Y", None, None),
            (3, "X V W | -V W X", None, lambda c, V, W, **_: c.b() * b1(c) * c.g(V, W)),
            (4, "V X W", None, lambda c, V, W, **_: c.b() * b1(c) * c.g(V, W) - c.b() ** 2 * c.g(V, W)),
            (5, "U V W", None, lambda c, U, V, W, **_: c.b() ** 2 * c.K(U, V, W)),
        ]),
        fam("ssnm-koszul/P-fiber", "ssnm", "koszul", "fiber", [
            (1, "X Y Z", None, None),
            (2, "X Y W | W X Y", None, None),
            (3, "X W Y", None, lambda c, W, **_: -c.b() ** 2 * c.g(W, c.P)),
            (4, "X V W | V X W | -V W X", None, lambda c, V, W, **_: c.b() * b1(c) * c.g(V, W)),
            (5, "U V W", None, lambda c, U, V, W, **_:
                c.b() ** 2 * c.K(U, V, W) + c.b() ** 4 * c.g(U, W) * c.g(V, c.P)),
        ]),
        fam("ssnm-curvature/P-base", "ssnm", "curvature", "base", [
            (1, "X Y Z T", None, None),
            (2, "X Y Z W | X Y W Z | X W Y Z", None, None),
            (3, "X Y V W | V W X Y", None, None),
            (4, "V X W Y | -X V W Y", None, lambda c, V, W, **_:
                c.b() * b2(c) * c.g(V, W) + 2 * c.b() * b1(c) * c.g(V, W)),
            (5, "V X Y W | -X V Y W", None, lambda c, V, W, **_: -c.b() * b2(c) * c.g(V, W)),
            (6, "X V W U | W U X V", None, None),
            (7, "W U V X", None, lambda c, W, U, V, **_: -c.b() ** 2 * (c.K(W, V, U) - c.K(U, V, W))),
            (8, "U V W Q", None, lambda c, U, V, W, Q, **_:
                c.b() ** 2 * c.R(U, V, W, Q) + c.b() ** 2 * gI(c) * quad(c, U, V, W, Q)),
        ]),
        fam("ssnm-curvature/P-fiber", "ssnm", "curvature", "fiber", [
            (1, "X Y Z T", None, None),
            (2, "X Y Z W | X Y W Z | X W Y Z", None, None),
            (3, "X Y V W | V W X Y", None, None),
            (4, "V X W Y | -X V W Y", None, lambda c, V, W, **_:
                c.b() * b2(c) * c.g(V, W) - c.b() ** 2 * c.dg(V, W, c.P)),
            (5, "V X Y W | -X V Y W", None, lambda c, V, W, **_: -c.b() * b2(c) * c.g(V, W)),
            (6, "X V W U", None, lambda c, V, W, U, **_:
                2 * c.b() ** 3 * b1(c) * (c.g(V, U) * c.g(W, c.P) + c.g(V, W) * c.g(U, c.P))),
            (7, "W U X V | W U V X", None, None),
            (8, "U V W Q", None, ssnm_r_fiber_8),
        ]),
        fam("ap-koszul", "ap", "koszul", "none", [
            (1, "X Y Z", None, None),
            (2, "X Y W | X W Y | W X Y", None, None),
            (3, "X V W", None, lambda c, V, W, **_: c.b() * b1(c) * c.g(V, W)),
            (4, "V X W | -V W X", None, lambda c, V, W, **_:
                0.5 * (c.b() * b1(c) * c.g(V, W) + c.b() * jb1(c) * c.g(V, c.J(W)))),
            (5, "U V W", None, lambda c, U, V, W, **_: c.b() ** 2 * c.Kt(U, V, W)),
        ]),
        fam("ap-curvature", "ap", "curvature", "none", [
            (1, "X Y Z T", None, None),
            (2, "X Y Z W | X W Y Z", None, None),
            (3, "X Y V W | V W X Y", None, None),
            (4, "X V Y W", None, lambda c, V, W, **_:
                0.5 * c.b() * b2(c) * c.g(V, W) + 0.5 * c.b() * djb1(c) * c.g(V, c.J(W))),
            (5, "X V W U", None, None),
            (6, "U V X W", None, lambda c, U, V, W, **_: _ap_mixed(c, U, V, W)),
            (7, "U V W Q", None, lambda c, U, V, W, Q, **_: _ap_fiber(c, U, V, W, Q)),
        ]),
    )


# M2 and M3: generalized Kasner products --------------------------------------------

def _kasner(name: str, three: bool) -> Catalog:
    """M2 (two fibers) or M3 (three fibers); M3 widens a few index conditions."""
    W = "warped"
    distinct3 = " or i!=j!=k" if three else ""

    def fam(tname, conn, obj, p_where, rows):
        return family(f"{name} {tname}", conn, obj, W, p_where, rows)

    def bb(c, j):
        return c.b(j)

    def gij(c, V, Q, U, W):
        """g_{F_i}(V_i, Q_i) g_{F_j}(U_j, W_j)."""
        return c.g(V, Q) * c.g(U, W)

    def pfix(c, j, V, W):
        """K_{F_j}(V, P, W) + b_j^2 g(P, P) g(V, W) - b_j^2 g(V, P) g(W, P)."""
        b, P = bb(c, j), c.P
        return c.K(V, P, W) + b ** 2 * c.g(P, P) * c.g(V, W) - b ** 2 * c.g(V, P) * c.g(W, P)

    def ssm_r_fiber_10(c, U, V, W, Q, j, **_):
        b, P, g, K = bb(c, j), c.P, c.g, c.K
        return (b ** 2 * c.R(U, V, W, Q) + (b ** 2 * gI(c, j, j) + b ** 6 * g(P, P)) * quad(c, U, V, W, Q)
                + b ** 4 * g(V, Q) * K(U, P, W) - b ** 4 * g(U, Q) * K(V, P, W)
                - b ** 4 * g(V, W) * K(U, P, Q) + b ** 4 * g(U, W) * K(V, P, Q)
                + b ** 6 * g(U, P) * (g(V, W) * g(Q, P) - g(V, Q) * g(W, P))
                - b ** 6 * g(V, P) * (g(U, W) * g(Q, P) - g(U, Q) * g(W, P)))

    def ssnm_r_fiber_11(c, U, V, W, Q, j, **_):
        b, P, g, K = bb(c, j), c.P, c.g, c.K
        return (b ** 2 * c.R(U, V, W, Q) + b ** 2 * gI(c, j, j) * quad(c, U, V, W, Q)
                + b ** 4 * g(Q, P) * (K(U, W, V) - K(V, W, U))
                + b ** 4 * c.dg(U, W, P) * g(V, Q) - b ** 4 * c.dg(V, W, P) * g(U, Q))

    def ap_r_10(c, U, V, W, Q, i, j, **_):
        J = c.J
        return 0.25 * bb(c, i) * bb(c, j) * (
            gI(c, i, j) * c.g(V, Q) * c.g(U, W)
            + gI(c, i, j, Ji=True) * c.g(V, J(Q)) * c.g(U, W)
            + gI(c, i, j, Jj=True) * c.g(V, Q) * c.g(U, J(W))
            + gI(c, i, j, Ji=True, Jj=True) * c.g(V, J(Q)) * c.g(U, J(W)))

    ssm_r_fiber = [
        (1, "X Y Z T", None, None),
        (2, "X Y Z Wj | X Wj Y Z", None, None),
        (3, "X Y Vi Wj | Vi Wj X Y", None, None),
        (4, "X Vi Wj Y", "i=j=l", lambda c, V, W, j, **_:
            -bb(c, j) * b2(c, j) * c.g(V, W) + bb(c, j) ** 2 * pfix(c, j, V, W)),
        (5, "X Vi Wj Y", "i=j!=l", lambda c, V, W, j, l, **_:
            -bb(c, j) * b2(c, j) * c.g(V, W)
            + bb(c, j) ** 2 * bb(c, l) ** 2 * c.g(V, W) * c.g(c.P, c.P)),
        (6, "X Vi Wj Y", None, None, True),
        (7, "X Vi Wj Uk | -Wj Uk X Vi", "i=j=k=l", lambda c, V, W, U, j, **_:
            bb(c, j) ** 3 * b1(c, j) * (c.g(V, U) * c.g(W, c.P) - c.g(V, W) * c.g(U, c.P))),
        (8, "X Vi Wj Uk | -Wj Uk X Vi", "i=j!=k=l", lambda c, V, W, U, j, l, **_:
            -bb(c, l) * bb(c, j) ** 2 * b1(c, l) * c.g(U, c.P) * c.g(V, W)),
        (9, "X Vi Wj Uk", None, None, True),
        (10, "Uk Vi Wj Qs", "i=j=k=s=l", lambda c, U, V, W, Q, j, **_:
            ssm_r_fiber_10(c, U, V, W, Q, j)),
        (11, "Uk Vi Wj Qs", "i=j=k=s!=l", lambda c, U, V, W, Q, j, l, **_:
            bb(c, j) ** 2 * c.R(U, V, W, Q)
            + (bb(c, j) ** 2 * gI(c, j, j) + bb(c, l) ** 2 * bb(c, j) ** 4 * c.g(c.P, c.P))
            * quad(c, U, V, W, Q)),
        (12, "Uk Vi Wj Qs", "j=k!=i=s=l", lambda c, U, V, W, Q, i, j, **_:
            bb(c, i) * bb(c, j) * gI(c, i, j) * gij(c, V, Q, U, W)
            + bb(c, i) ** 2 * bb(c, j) ** 2 * c.g(U, W) * pfix(c, i, V, Q)),
        (13, "Uk Vi Wj Qs", "l=j=k!=i=s", lambda c, U, V, W, Q, i, j, **_:
            bb(c, i) * bb(c, j) * gI(c, i, j) * gij(c, V, Q, U, W)
            + bb(c, i) ** 2 * bb(c, j) ** 2 * c.g(V, Q) * pfix(c, j, U, W)),
    ]
    if three:
        ssm_r_fiber.append((14, "Uk Vi Wj Qs", "i=s!=j=k!=l", lambda c, U, V, W, Q, i, j, l, **_:
                            bb(c, i) * bb(c, j) * gI(c, i, j) * gij(c, V, Q, U, W)
                            + bb(c, i) ** 2 * bb(c, j) ** 2 * bb(c, l) ** 2 * gij(c, V, Q, U, W)
                            * c.g(c.P, c.P)))
    ssm_r_fiber.append((15 if three else 14, "Uk Vi Wj Qs", None, None, True))

    return _tables(
        fam("ssm-koszul/P-base", "ssm", "koszul", "base", [
            (1, "X Y Z", None, None),
            (2, "X Y Wj | X Wj Y | Wj X Y", None, None),
            (3, "X Vi Wj", "i=j", lambda c, V, W, j, **_: bb(c, j) * b1(c, j) * c.g(V, W)),
            (4, "Vi X Wj | -Vi Wj X", "i=j", lambda c, V, W, j, **_:
                bb(c, j) * b1(c, j) * c.g(V, W) - bb(c, j) ** 2 * c.g(V, W)),
            (5, "X Vi Wj | Vi X Wj | Vi Wj X", "i!=j", None),
            (6, "Ui Vj Wk", "i=j=k", lambda c, U, V, W, j, **_: bb(c, j) ** 2 * c.K(U, V, W)),
            (7, "Ui Vj Wk", None, None, True),
        ]),
        fam("ssm-koszul/P-fiber", "ssm", "koszul", "fiber", [
            (1, "X Y Z", None, None),
            (2, "X Y Wj | -X Wj Y", "j=l", lambda c, W, j, **_: bb(c, j) ** 2 * c.g(W, c.P)),
            (3, "X Y Wj | X Wj Y", "j!=l", None),
            (4, "Wj X Y", None, None),
            (5, "X Vi Wj | Vi X Wj | -Vi Wj X", "i=j", lambda c, V, W, j, **_:
                bb(c, j) * b1(c, j) * c.g(V, W)),
            (6, "X Vi Wj | Vi X Wj | Vi Wj X", "i!=j", None),
            (7, "Ui Vj Wk", "i=j=k=l", lambda c, U, V, W, j, **_:
                bb(c, j) ** 2 * c.K(U, V, W) + bb(c, j) ** 4 * c.g(U, W) * c.g(V, c.P)
                - bb(c, j) ** 4 * c.g(U, V) * c.g(W, c.P)),
            (8, "Ui Vj Wk | -Ui Wk Vj", "i=j!=k=l", lambda c, U, V, W, j, k, **_:
                -bb(c, j) ** 2 * bb(c, k) ** 2 * c.g(U, V) * c.g(W, c.P)),
            (9, "Ui Vj Wk", None, None, True),
        ]),
        fam("ssm-curvature/P-base", "ssm", "curvature", "base", [
            (1, "X Y Z T", None, None),
            (2, "X Y Z Wj | X Wj Y Z", None, None),
            (3, "X Y Vi Wj | Vi Wj X Y", "i=j", None),
            (4, "X Vi Wj Y", "i=j", lambda c, V, W, j, **_:
                -bb(c, j) * b2(c, j) * c.g(V, W) + bb(c, j) * b1(c, j) * c.g(V, W)),
            (5, "X Y Vi Wj | Vi Wj X Y | X Vi Wj Y", "i!=j", None),
            (6, "X Vi Wj Uk | Wj Uk X Vi", "i=j=k", None),
            (7, "X Vi Wj Uk | X Uk Vi Wj | Wj Uk X Vi | Vi Wj X Uk", "i=j!=k" + distinct3, None),
            (8, "Uk Vi Wj Qs", "i=j=k=s", lambda c, U, V, W, Q, j, **_:
                bb(c, j) ** 2 * c.R(U, V, W, Q)
                + (bb(c, j) ** 2 * gI(c, j, j) + 2 * bb(c, j) ** 3 * b1(c, j) - bb(c, j) ** 4)
                * quad(c, U, V, W, Q)),
            (9, "Uk Vi Wj Qs | Wj Qs Uk Vi", "i=j=s!=k", None),
            (10, "Uk Vi Wj Qs", "j=k!=i=s", lambda c, U, V, W, Q, i, j, **_:
                (bb(c, i) * bb(c, j) * gI(c, i, j) + bb(c, i) * bb(c, j) ** 2 * b1(c, i)
                 + bb(c, j) * bb(c, i) ** 2 * b1(c, j) - bb(c, i) ** 2 * bb(c, j) ** 2)
                * gij(c, V, Q, U, W)),
            (11, "Uk Vi Wj Qs", None, None, True),
        ]),
        fam("ssm-curvature/P-fiber", "ssm", "curvature", "fiber", ssm_r_fiber),
        fam("ssnm-koszul/P-base", "ssnm", "koszul", "base", [
            (1, "X Y Z", None, lambda c, **_: 1.0),
            (2, "X Y Wj | X Wj Y | Wj X Y", None, None),
            (3, "X Vi Wj | -Vi Wj X", "i=j", lambda c, V, W, j, **_: bb(c, j) * b1(c, j) * c.g(V, W)),
            (4, "Vi X Wj", "i=j", lambda c, V, W, j, **_:
                bb(c, j) * b1(c, j) * c.g(V, W) - bb(c, j) ** 2 * c.g(V, W)),
            (5, "X Vi Wj | Vi X Wj | Vi Wj X", "i!=j", None),
            (6, "Ui Vj Wk", "i=j=k", lambda c, U, V, W, j, **_: bb(c, j) ** 2 * c.K(U, V, W)),
            (7, "Ui Vj Wk", "i=j!=k" + distinct3, None),
        ]),
        fam("ssnm-koszul/P-fiber", "ssnm", "koszul", "fiber", [
            (1, "X Y Z", None, None),
            (2, "X Y Wj | Wj X Y", "j=l", None),
            (3, "X Wj Y", "j=l", lambda c, W, j, **_: -bb(c, j) ** 2 * c.g(W, c.P)),
            (4, "X Y Wj | X Wj Y | Wj X Y", "j!=l", None),
            (5, "X Vi Wj | Vi X Wj | -Vi Wj X", "i=j", lambda c, V, W, j, **_:
                bb(c, j) * b1(c, j) * c.g(V, W)),
            (6, "X Vi Wj | Vi X Wj | Vi Wj X", "i!=j", None),
            (7, "Ui Vj Wk", "i=j=k=l", lambda c, U, V, W, j, **_:
                bb(c, j) ** 2 * c.K(U, V, W) + bb(c, j) ** 4 * c.g(U, W) * c.g(V, c.P)),
            (8, "Ui Vj Wk", "i=j=k!=l", lambda c, U, V, W, j, **_: bb(c, j) ** 2 * c.K(U, V, W)),
            (9, "Ui Wk Vj", "i=j!=k=l", lambda c, U, W, V, j, k, **_:
                bb(c, j) ** 2 * bb(c, k) ** 2 * c.g(U, V) * c.g(W, c.P)),
            (10, "Ui Vj Wk", None, None, True),
        ]),
        fam("ssnm-curvature/P-base", "ssnm", "curvature", "base", [
            (1, "X Y Z T", None, None),
            (2, "X Y Z Wj | X Y Wj Z | X Wj Y Z", None, None),
            (3, "X Y Vi Wj | Vi Wj X Y", "i=j", None),
            (4, "Vi X Wj Y | -X Vi Wj Y", "i=j", lambda c, V, W, j, **_:
                bb(c, j) * b2(c, j) * c.g(V, W) + 2 * bb(c, j) * b1(c, j) * c.g(V, W)),
            (5, "Vi X Y Wj | -X Vi Y Wj", "i=j", lambda c, V, W, j, **_:
                -bb(c, j) * b2(c, j) * c.g(V, W)),
            (6, "X Y Vi Wj | Vi Wj X Y | X Vi Wj Y | X Vi Y Wj", "i!=j", None),
            (7, "X Vi Wj Uk | Wj Uk X Vi", "i=j=k", None),
            (8, "Wj Uk Vi X", "i=j=k", lambda c, W, U, V, j, **_:
                -bb(c, j) ** 2 * (c.K(W, V, U) - c.K(U, V, W))),
            (9, "X Vi Wj Uk | Wj Uk X Vi | Wj Uk Vi X", None, None, True),
            (10, "Uk Vi Wj Qs", "i=j=k=s", lambda c, U, V, W, Q, j, **_:
                bb(c, j) ** 2 * c.R(U, V, W, Q) + bb(c, j) ** 2 * gI(c, j, j) * quad(c, U, V, W, Q)),
            (11, "Uk Vi Wj Qs", "k=j!=i=s", lambda c, U, V, W, Q, i, j, **_:
                bb(c, i) * bb(c, j) * gI(c, i, j) * gij(c, V, Q, U, W)),
            (12, "Uk Vi Wj Qs", "k=s!=j=i", lambda c, U, V, W, Q, j, k, **_:
                -bb(c, j) * bb(c, k) * gI(c, j, k) * c.g(V, W) * c.g(U, Q)),
            (13, "Uk Vi Wj Qs", None, None, True),
        ]),
        fam("ssnm-curvature/P-fiber", "ssnm", "curvature", "fiber", [
            (1, "X Y Z T", None, None),
            (2, "X Y Z Wj | X Y Wj Z | X Wj Y Z | Wj X Y Z", None, None),
            (3, "X Y Vi Wj | Vi Wj X Y", None, None),
            (4, "Vi X Wj Y | -X Vi Wj Y", "i=j=l", lambda c, V, W, j, **_:
                bb(c, j) * b2(c, j) * c.g(V, W) - bb(c, j) ** 2 * c.dg(V, W, c.P)),
            (5, "Vi X Wj Y | -X Vi Wj Y", "i=j!=l", lambda c, V, W, j, **_:
                bb(c, j) * b2(c, j) * c.g(V, W)),
            (6, "Vi X Y Wj | -X Vi Y Wj", "i=j=l or i=j!=l", lambda c, V, W, j, **_:
                -bb(c, j) * b2(c, j) * c.g(V, W)),
            (7, "Vi X Wj Y | Vi X Y Wj", None, None, True),
            (8, "X Vi Wj Uk", "i=j=k=l", lambda c, V, W, U, j, **_:
                2 * bb(c, j) ** 3 * b1(c, j) * (c.g(V, U) * c.g(W, c.P) + c.g(V, W) * c.g(U, c.P))),
            (9, "X Vi Wj Uk | X Vi Uk Wj", "i=j!=k=l", lambda c, V, W, U, j, k, **_:
                2 * bb(c, j) * bb(c, k) ** 2 * b1(c, j) * c.g(V, W) * c.g(U, c.P)),
            (10, "X Vi Wj Uk | Wj Uk X Vi | Wj Uk Vi X", None, None, True),
            (11, "Uk Vi Wj Qs", "i=j=k=s=l", lambda c, U, V, W, Q, j, **_:
                ssnm_r_fiber_11(c, U, V, W, Q, j)),
            (12, "Uk Vi Wj Qs", "i=j=k=s!=l", lambda c, U, V, W, Q, j, **_:
                bb(c, j) ** 2 * c.R(U, V, W, Q) + bb(c, j) ** 2 * gI(c, j, j) * quad(c, U, V, W, Q)),
            (13, "Uk Vi Wj Qs", "j=k!=i=s=l" + (" or i=s!=j=k!=l" if three else ""),
             lambda c, U, V, W, Q, i, j, **_: bb(c, i) * bb(c, j) * gI(c, i, j) * gij(c, V, Q, U, W)),
            (14, "Uk Vi Wj Qs", "l=j=k!=i=s", lambda c, U, V, W, Q, i, j, **_:
                bb(c, i) * bb(c, j) * gI(c, i, j) * gij(c, V, Q, U, W)
                + bb(c, i) ** 2 * bb(c, j) ** 2 * c.dg(U, W, c.P) * c.g(V, Q)),
            (15, "Uk Vi Wj Qs", "k=s!=i=j=l", lambda c, U, V, W, Q, j, k, **_:
                -bb(c, j) * bb(c, k) * gI(c, j, k) * c.g(V, W) * c.g(U, Q)
                - bb(c, j) ** 2 * bb(c, k) ** 2 * c.dg(V, W, c.P) * c.g(U, Q)),
            (16, "Uk Vi Wj Qs", "l=k=s!=i=j" + (" or i=j!=k=s!=l" if three else ""),
             lambda c, U, V, W, Q, j, k, **_:
                -bb(c, j) * bb(c, k) * gI(c, j, k) * c.g(V, W) * c.g(U, Q)),
            (17, "Uk Vi Wj Qs", "l=k!=i=j=s", lambda c, U, V, W, Q, j, k, **_:
                bb(c, j) ** 2 * bb(c, k) ** 2 * c.g(U, c.P) * (c.K(V, Q, W) - c.K(W, Q, V))),
            (18, "Uk Vi Wj Qs", None, None, True),
        ]),
        fam("ap-koszul", "ap", "koszul", "none", [
            (1, "X Y Z", None, None),
            (2, "X Y Wj | X Wj Y | Wj X Y", None, None),
            (3, "X Vi Wj", "i=j", lambda c, V, W, j, **_: bb(c, j) * b1(c, j) * c.g(V, W)),
            (4, "Vi X Wj | -Vi Wj X", "i=j", lambda c, V, W, j, **_:
                0.5 * (bb(c, j) * b1(c, j) * c.g(V, W) + bb(c, j) * jb1(c, j) * c.g(V, c.J(W)))),
            (5, "X Vi Wj | Vi X Wj | Vi Wj X", "i!=j", None),
            (6, "Ui Vj Wk", "i=j=k", lambda c, U, V, W, j, **_: bb(c, j) ** 2 * c.Kt(U, V, W)),
            (7, "Ui Vj Wk | Ui Wk Vj | Wk Ui Vj", "i=j!=k", None),
        ] + ([(8, "Ui Vj Wk", "i!=j!=k", None)] if three else [])),
        fam("ap-curvature", "ap", "curvature", "none", [
            (1, "X Y Z T", None, None),
            (2, "X Y Z Wj | X Wj Y Z", None, None),
            (3, "X Y Vi Wj | Vi Wj X Y", None, None),
            (4, "X Vi Y Wj", "i=j", lambda c, V, W, j, **_:
                0.5 * bb(c, j) * b2(c, j) * c.g(V, W) + 0.5 * bb(c, j) * djb1(c, j) * c.g(V, c.J(W))),
            (5, "X Vi Y Wj", "i!=j", None),
            (6, "X Vi Wj Uk", None, None),
            (7, "Uk Vi X Wj", "i=j=k", lambda c, U, V, W, j, **_: _ap_mixed(c, U, V, W, j)),
            (8, "Uk Vi X Wj", None, None, True),
            (9, "Uk Vi Wj Qs", "i=j=k=s", lambda c, U, V, W, Q, j, **_: _ap_fiber(c, U, V, W, Q, j)),
            (10, "Uk Vi Wj Qs", "j=k!=i=s", ap_r_10),
            (11, "Uk Vi Wj Qs", "i=k!=j=s", None),
        ]),
    )


# M4 = (0, 1) x_b F twisted ---------------------------------------------------------

def _m4() -> Catalog:
    T = "twisted"

    def fam(name, conn, obj, p_where, rows):
        return family(f"M4 {name}", conn, obj, T, p_where, rows)

    def t(c):
        return dt_arg(c)

    def ub(c, A):
        """A(db/dt)."""
        return c.dd(A, t(c))

    def gsF(c, A, B, kind=Kind.PLAIN, J=False):
        return c.gs(c.nab(A, B, kind), c.dbJ(1, 1) if J else c.dbF(), 1)

    def gF(c):
        return c.gs(c.dbF(), c.dbF(), 1)

    def hess(c, A, B):
        b = c.b()
        return b * c.dd(A, B) - 2 * c.d(A) * c.d(B) - b * gsF(c, A, B)

    def fiber_r(c, U, V, W, Q, coef, shift=lambda A, B: 0.0):
        h = lambda A, B: hess(c, A, B) + shift(A, B)
        return (c.b() ** 2 * c.R(U, V, W, Q) + coef * quad(c, U, V, W, Q)
                + h(U, W) * c.g(V, Q) + h(V, Q) * c.g(U, W) - h(V, W) * c.g(U, Q) - h(U, Q) * c.g(V, W))

    def kfib(c, U, V, W):
        b = c.b()
        return (b * c.d(U) * c.g(V, W) + b * c.d(V) * c.g(W, U) - b * c.d(W) * c.g(U, V)
                + b ** 2 * c.K(U, V, W))

    def mixed(c, A, B, V):
        """bA(b')g(B, V) - A(b)b'g(B, V) - bB(b')g(A, V) + B(b)b'g(A, V)."""
        b, bp = c.b(), b1(c)
        return ((b * ub(c, A) - c.d(A) * bp) * c.g(B, V) - (b * ub(c, B) - c.d(B) * bp) * c.g(A, V))

    def ssm_r_fiber_4(c, V, W, **_):
        b, P, g = c.b(), c.P, c.g
        return (b * b2(c) * g(V, W) + b ** 4 * g(V, P) * g(P, W) - b ** 4 * g(V, W) * g(P, P)
                - b * c.d(V) * g(P, W) - b * c.d(P) * g(W, V) + b * c.d(W) * g(V, P) - b ** 2 * c.K(V, P, W))

    def ssm_r_fiber_7(c, U, V, W, Q, **_):
        b, P, g, d = c.b(), c.P, c.g, c.d
        coef = b ** 2 * gI(c) + gF(c) + 2 * b ** 3 * d(P) + b ** 6 * g(P, P)
        return (fiber_r(c, U, V, W, Q, coef, shift=lambda A, B: b ** 4 * c.K(A, P, B))
                + b ** 3 * d(Q) * (g(U, P) * g(V, W) - g(V, P) * g(U, W))
                + (b ** 6 * g(U, P) - b ** 3 * d(U)) * (g(V, W) * g(P, Q) - g(P, W) * g(V, Q))
                - (b ** 6 * g(V, P) - b ** 3 * d(V)) * (g(U, W) * g(P, Q) - g(P, W) * g(U, Q))
                - b ** 3 * d(W) * (g(U, P) * g(V, Q) - g(V, P) * g(U, Q)))

    def ssnm_r_base_7(c, V, W, U, **_):
        b = c.b()
        return (-mixed(c, V, W, U) + 2 * b * c.d(W) * c.g(U, V) - 2 * b * c.d(V) * c.g(U, W)
                - b ** 2 * (c.K(W, U, V) - c.K(V, U, W)))

    def ssnm_r_fiber_8(c, U, V, W, Q, **_):
        b, P, g, d = c.b(), c.P, c.g, c.d
        return (fiber_r(c, U, V, W, Q, b ** 2 * gI(c) + gF(c))
                + 2 * b ** 3 * d(U) * (g(W, P) * g(V, Q) + g(Q, P) * g(V, W))
                - 2 * b ** 3 * d(V) * (g(W, P) * g(U, Q) + g(Q, P) * g(U, W))
                + b ** 4 * c.dg(U, W, P) * g(V, Q) - b ** 4 * c.dg(V, W, P) * g(U, Q)
                + b ** 4 * g(P, Q) * (c.K(U, W, V) - c.K(V, W, U)))

    def ap_r_5(c, V, W, U, **_):
        b, bp, J, g = c.b(), b1(c), c.J, c.g
        return (-0.5 * (bp * c.d(W) - b * ub(c, W)) * g(V, U)
                - 0.5 * (bp * c.d(J(W)) - b * ub(c, J(W))) * g(V, J(U))
                + 0.5 * (bp * c.d(U) - b * ub(c, U)) * g(V, W)
                + 0.5 * (bp * c.d(J(U)) - b * ub(c, J(U))) * g(V, J(W)))

    def ap_r_6(c, W, U, V, **_):
        b, bp, jbp, J, g, d = c.b(), b1(c), jb1(c), c.J, c.g, c.d
        tJ = c.J(t(c))
        return (0.25 * (2 * b * ub(c, W) - d(W) * bp - jbp * d(J(W))) * g(U, V)
                + 0.25 * (2 * b * c.dd(W, tJ) - d(J(W)) * bp - jbp * d(W)) * g(U, J(V))
                - 0.25 * (2 * b * ub(c, U) - d(U) * bp - jbp * d(J(U))) * g(W, V)
                - 0.25 * (2 * b * c.dd(U, tJ) - d(J(U)) * bp - jbp * d(U)) * g(W, J(V))
                - 0.25 * b * bp * k4(c, U, V, W) + 0.25 * b * jbp * k4j(c, U, V, W))

    def ap_r_7(c, U, V, W, Q, **_):
        b, J, g, d = c.b(), c.J, c.g, c.d
        dB, dF, jB, jF = c.dbB(), c.dbF(), c.dbJ(1, 0), c.dbJ(1, 1)
        b2_ = b ** 2
        plain = b2_ * c.gs(dB, dB, 0) + c.gs(dF, dF, 1)
        jj = b2_ * c.gs(jB, jB, 0) + c.gs(jF, jF, 1)
        j1 = b2_ * c.gs(jB, dB, 0) + c.gs(jF, dF, 1)
        mix, jjq = jquad(c, U, V, W, Q)

        def a(S, T_):
            return 3 * d(S) * d(T_) - 2 * b * c.dd(S, T_) + d(J(S)) * d(J(T_)) + 2 * b * gsF(c, S, T_, Kind.AP)

        def aj(S, T_):
            return (3 * d(S) * d(J(T_)) - 2 * b * c.dd(S, J(T_)) + d(J(S)) * d(T_)
                    + 2 * b * gsF(c, S, T_, Kind.AP, J=True))

        return (b2_ * c.Rt(U, V, W, Q) + 0.25 * plain * quad(c, U, V, W, Q) + 0.25 * jj * jjq
                + 0.25 * j1 * mix
                - 0.25 * a(U, W) * g(V, Q) - 0.25 * aj(U, W) * g(V, J(Q))
                - 0.25 * a(V, Q) * g(U, W) - 0.25 * aj(V, Q) * g(U, J(W))
                + 0.25 * a(V, W) * g(U, Q) + 0.25 * aj(V, W) * g(U, J(Q))
                + 0.25 * a(U, Q) * g(V, W) + 0.25 * aj(U, Q) * g(V, J(W))
                + 0.25 * b * d(Q) * k4(c, V, W, U) - 0.25 * b * d(J(Q)) * k4j(c, V, W, U)
                + 0.25 * b * d(W) * k4(c, V, Q, U) - 0.25 * b * d(J(W)) * k4j(c, V, Q, U))

    return _tables(
        fam("ssm-koszul/P-base", "ssm", "koszul", "base", [
            (1, "X Y Z", None, None),
            (2, "X Y W | X W Y | W X Y", None, None),
            (3, "X V W", None, lambda c, V, W, **_: c.b() * b1(c) * c.g(V, W)),
            (4, "V X W | -V W X", None, lambda c, V, W, **_:
                c.b() * b1(c) * c.g(V, W) - c.b() ** 2 * c.g(V, W)),
            (5, "U V W", None, lambda c, U, V, W, **_: kfib(c, U, V, W)),
        ]),
        fam("ssm-koszul/P-fiber", "ssm", "koszul", "fiber", [
            (1, "X Y Z", None, None),
            (2, "X Y W | -X W Y", None, lambda c, W, **_: c.b() ** 2 * c.g(c.P, W)),
            (3, "W X Y", None, None),
            (4, "X V W | V X W | -V W X", None, lambda c, V, W, **_: c.b() * b1(c) * c.g(V, W)),
            (5, "U V W", None, lambda c, U, V, W, **_:
                kfib(c, U, V, W) + c.b() ** 4 * c.g(V, c.P) * c.g(U, W)
                - c.b() ** 4 * c.g(W, c.P) * c.g(U, V)),
        ]),
        fam("ssm-curvature/P-base", "ssm", "curvature", "base", [
            (1, "X Y Z T", None, None),
            (2, "X Y Z W | X W Y Z", None, None),
            (3, "X Y V W | V W X Y", None, None),
            (4, "X V Y W", None, lambda c, V, W, **_:
                c.b() * b2(c) * c.g(V, W) - c.b() * b1(c) * c.g(V, W)),
            (5, "X V U W | U W X V", None, lambda c, V, U, W, **_: mixed(c, U, W, V)),
            (6, "U V W Q", None, lambda c, U, V, W, Q, **_:
                fiber_r(c, U, V, W, Q, c.b() ** 2 * gI(c) - gF(c) + 2 * c.b() ** 3 * b1(c) - c.b() ** 4)),
        ]),
        fam("ssm-curvature/P-fiber", "ssm", "curvature", "fiber", [
            (1, "X Y Z T", None, None),
            (2, "X Y Z W | X W Y Z", None, None),
            (3, "X Y V W | V W X Y", None, None),
            (4, "X V Y W", None, ssm_r_fiber_4),
            (5, "X V U W", None, lambda c, V, U, W, **_:
                mixed(c, U, W, V)
                + c.b() ** 3 * b1(c) * (c.g(U, c.P) * c.g(W, V) - c.g(W, c.P) * c.g(U, V))),
            (6, "U W X V", None, lambda c, U, W, V, **_:
                mixed(c, U, W, V)
                - c.b() ** 3 * b1(c) * (c.g(U, c.P) * c.g(W, V) - c.g(W, c.P) * c.g(U, V))),
            (7, "U V W Q", None, ssm_r_fiber_7),
        ]),
        fam("ssnm-koszul/P-base", "ssnm", "koszul", "base", [
            (1, "X Y Z", None, lambda c, **_: 1.0),
            (2, "X Y W | X W Y | W X Y", None, None),
            (3, "X V W | -V W X", None, lambda c, V, W, **_: c.b() * b1(c) * c.g(V, W)),
            (4, "V X W", None, lambda c, V, W, **_: c.b() * b1(c) * c.g(V, W) - c.b() ** 2 * c.g(V, W)),
            (5, "U V W", None, lambda c, U, V, W, **_: kfib(c, U, V, W)),
        ]),
        fam("ssnm-koszul/P-fiber", "ssnm", "koszul", "fiber", [
            (1, "X Y Z", None, None),
            (2, "X Y W | W X Y", None, None),
            (3, "X W Y", None, lambda c, W, **_: -c.b() ** 2 * c.g(W, c.P)),
            (4, "X V W | V X W | -V W X", None, lambda c, V, W, **_: c.b() * b1(c) * c.g(V, W)),
            (5, "U V W", None, lambda c, U, V, W, **_:
                kfib(c, U, V, W) + c.b() ** 4 * c.g(V, c.P) * c.g(U, W)),
        ]),
        fam("ssnm-curvature/P-base", "ssnm", "curvature", "base", [
            (1, "X Y Z T", None, None),
            (2, "X Y Z W | X Y W Z | X W Y Z", None, None),
            (3, "X Y V W | V W X Y", None, None),
            (4, "V X W Y | -X V W Y", None, lambda c, V, W, **_:
                c.b() * b2(c) * c.g(V, W) + 2 * c.b() * b1(c) * c.g(V, W)),
            (5, "V X Y W | -X V Y W", None, lambda c, V, W, **_: -c.b() * b2(c) * c.g(V, W)),
            (6, "X U V W | V W X U", None, lambda c, U, V, W, **_: mixed(c, V, W, U)),
            (7, "V W U X", None, ssnm_r_base_7),
            (8, "U V W Q", None, lambda c, U, V, W, Q, **_:
                fiber_r(c, U, V, W, Q, c.b() ** 2 * gI(c) + gF(c))),
        ]),
        fam("ssnm-curvature/P-fiber", "ssnm", "curvature", "fiber", [
            (1, "X Y Z T", None, None),
            (2, "X Y Z W | X Y W Z | X W Y Z", None, None),
            (3, "X Y V W | V W X Y", None, None),
            # the printed first term reads d^2 b / dt; taken as the second t-derivative
            (4, "X V W Y | -V X W Y", None, lambda c, V, W, **_:
                -c.b() * b2(c) * c.g(V, W) + 2 * c.b() * c.d(V) * c.g(W, c.P)
                + c.b() ** 2 * c.dg(V, W, c.P)),
            (5, "X V Y W | -V X Y W", None, lambda c, V, W, **_: c.b() * b2(c) * c.g(V, W)),
            (6, "X V U W | -V X U W", None, lambda c, V, U, W, **_:
                mixed(c, U, W, V)
                + 2 * c.b() ** 3 * b1(c) * (c.g(U, c.P) * c.g(V, W) + c.g(W, c.P) * c.g(U, V))),
            (7, "U W X V | -U W V X", None, lambda c, U, W, V, **_: mixed(c, U, W, V)),
            (8, "U V W Q", None, ssnm_r_fiber_8),
        ]),
        fam("ap-koszul", "ap", "koszul", "none", [
            (1, "X Y Z", None, None),
            (2, "X Y W | X W Y | W X Y", None, None),
            (3, "X V W", None, lambda c, V, W, **_: c.b() * b1(c) * c.g(V, W)),
            (4, "V X W | -V W X", None, lambda c, V, W, **_:
                0.5 * (c.b() * b1(c) * c.g(V, W) + c.b() * jb1(c) * c.g(V, c.J(W)))),
            (5, "U V W", None, lambda c, U, V, W, **_:
                c.b() * c.d(U) * c.g(V, W) + 0.5 * c.b() * c.d(V) * c.g(U, W)
                - 0.5 * c.b() * c.d(W) * c.g(U, V) + 0.5 * c.b() * c.d(c.J(V)) * c.g(U, c.J(W))
                - 0.5 * c.b() * c.d(c.J(W)) * c.g(U, c.J(V)) + c.b() ** 2 * c.Kt(U, V, W)),
        ]),
        fam("ap-curvature", "ap", "curvature", "none", [
            (1, "X Y Z T", None, None),
            (2, "X Y Z W | X W Y Z", None, None),
            (3, "X Y V W | V W X Y", None, None),
            (4, "X V Y W", None, lambda c, V, W, **_:
                0.5 * c.b() * b2(c) * c.g(V, W) + 0.5 * c.b() * djb1(c) * c.g(V, c.J(W))),
            (5, "X V W U", None, ap_r_5),
            (6, "W U X V", None, ap_r_6),
            (7, "U V W Q", None, ap_r_7),
        ]),
    )


FIXTURE_TABLES: dict[str, Catalog] = {
    "M1": _m1(),
    "M2": _kasner("M2", three=False),
    "M3": _kasner("M3", three=True),
    "M4": _m4(),
}


def fixture_tables(name: str) -> Catalog:
    return FIXTURE_TABLES[name]
