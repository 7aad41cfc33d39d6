"""Truncated second-order Taylor data for arrays of smooth functions.

A ``Jet`` stores, at one point of an n-dimensional chart, the values of an
array of functions together with their first and second partial derivatives.
For a value array of shape ``S`` the gradient has shape ``S + (n,)`` and the
Hessian ``S + (n, n)``; the derivative axes always come last.

Jets may carry less than second-order data (``order`` 1 or 0).  Every
operation returns the lowest order among its operands, which is how the
curvature code tracks that a Koszul form built from order-2 metric data is
only known to first order.
"""

from __future__ import annotations

import numpy as np

__all__ = ["Jet", "jeinsum", "constant", "coordinate", "derive", "pair", "bracket"]


class Jet:
    __slots__ = ("val", "grad", "hess")

    def __init__(self, val, grad=None, hess=None):
        self.val = np.asarray(val, dtype=float)
        self.grad = grad
        self.hess = hess if grad is not None else None

    @property
    def order(self) -> int:
        if self.hess is not None:
            return 2
        if self.grad is not None:
            return 1
        return 0

    @property
    def shape(self) -> tuple:
        return self.val.shape

    def truncate(self, order: int) -> "Jet":
        if order >= self.order:
            return self
        if order == 1:
            return Jet(self.val, self.grad)
        return Jet(self.val)

    def d(self) -> "Jet":
        """Gradient as a jet one order lower; the new last axis is the derivative."""
        if self.grad is None:
            raise ValueError("jet carries no derivative data")
        return Jet(self.grad, self.hess)

    def __getitem__(self, idx) -> "Jet":
        if not isinstance(idx, tuple):
            idx = (idx,)
        idx = idx + (Ellipsis,) if Ellipsis not in idx else idx
        g = self.grad[idx + (slice(None),)] if self.grad is not None else None
        h = self.hess[idx + (slice(None), slice(None))] if self.hess is not None else None
        return Jet(self.val[idx], g, h)

    # arithmetic -----------------------------------------------------------

    def __neg__(self) -> "Jet":
        return Jet(-self.val, _neg(self.grad), _neg(self.hess))

    def __add__(self, other) -> "Jet":
        if not isinstance(other, Jet):
            return Jet(self.val + other, self.grad, self.hess)
        order = min(self.order, other.order)
        g = self.grad + other.grad if order >= 1 else None
        h = self.hess + other.hess if order >= 2 else None
        return Jet(self.val + other.val, g, h)

    __radd__ = __add__

    def __sub__(self, other) -> "Jet":
        return self + (-other)

    def __rsub__(self, other) -> "Jet":
        return (-self) + other

    def __mul__(self, other) -> "Jet":
        if not isinstance(other, Jet):
            c = np.asarray(other, dtype=float)
            return Jet(self.val * c, _scale(self.grad, c, 1), _scale(self.hess, c, 2))
        order = min(self.order, other.order)
        a, b = self, other
        val = a.val * b.val
        g = h = None
        if order >= 1:
            g = a.grad * b.val[..., None] + a.val[..., None] * b.grad
        if order >= 2:
            cross = a.grad[..., :, None] * b.grad[..., None, :]
            h = (a.hess * b.val[..., None, None] + cross + np.swapaxes(cross, -1, -2)
                 + a.val[..., None, None] * b.hess)
        return Jet(val, g, h)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Jet":
        if not isinstance(other, Jet):
            return self * (1.0 / np.asarray(other, dtype=float))
        return self * other.reciprocal()

    def __rtruediv__(self, other) -> "Jet":
        return self.reciprocal() * other

    def reciprocal(self) -> "Jet":
        u = self.val
        if np.any(u == 0.0):
            raise ZeroDivisionError("division by zero")
        r = 1.0 / u
        return self.chain(r, -r * r, 2.0 * r * r * r)

    def chain(self, f0, f1, f2) -> "Jet":
        """Compose an elementwise function with value f0 and derivatives f1, f2."""
        f0 = np.asarray(f0, dtype=float)
        g = h = None
        if self.grad is not None:
            f1 = np.asarray(f1, dtype=float)
            g = f1[..., None] * self.grad
            if self.hess is not None:
                gg = self.grad[..., :, None] * self.grad[..., None, :]
                h = np.asarray(f2, dtype=float)[..., None, None] * gg + f1[..., None, None] * self.hess
        return Jet(f0, g, h)

    def __repr__(self) -> str:
        return f"Jet(order={self.order}, val={self.val!r})"


def _neg(a):
    return None if a is None else -a


def _scale(a, c, extra):
    if a is None:
        return None
    return a * c.reshape(c.shape + (1,) * extra) if c.ndim else a * c


def constant(val, n: int, order: int = 2) -> Jet:
    val = np.asarray(val, dtype=float)
    g = np.zeros(val.shape + (n,)) if order >= 1 else None
    h = np.zeros(val.shape + (n, n)) if order >= 2 else None
    return Jet(val, g, h)


def coordinate(x: np.ndarray, i: int) -> Jet:
    n = len(x)
    g = np.zeros(n)
    g[i] = 1.0
    return Jet(float(x[i]), g, np.zeros((n, n)))


_DA, _DB = "Y", "Z"


def jeinsum(subscripts: str, *operands) -> Jet:
    """``np.einsum`` lifted to jets by the Leibniz rule.

    Operands may be jets or plain arrays (treated as constants).  Subscripts
    must use lowercase letters and may use ``...`` for broadcast batch axes.
    """
    lhs, out = subscripts.replace(" ", "").split("->")
    ins = lhs.split(",")
    vals = []
    jets = []
    order = 2
    for k, op in enumerate(operands):
        if isinstance(op, Jet):
            vals.append(op.val)
            jets.append(k)
            order = min(order, op.order)
        else:
            vals.append(np.asarray(op, dtype=float))
    val = np.einsum(subscripts, *vals)
    grad = hess = None

    def term(repl, extra):
        sub = ",".join(ins[k] + repl[k][1] if k in repl else ins[k] for k in range(len(ins)))
        arrs = [repl[k][0] if k in repl else vals[k] for k in range(len(ins))]
        arrs_size = sum(a.size for a in arrs)
        return np.einsum(f"{sub}->{out}{extra}", *arrs, optimize=arrs_size > 2000 and len(arrs) > 2)

    if order >= 1 and jets:
        grad = sum(term({k: (operands[k].grad, _DA)}, _DA) for k in jets)
    if order >= 2 and jets:
        hess = sum(term({k: (operands[k].hess, _DA + _DB)}, _DA + _DB) for k in jets)
        for k in jets:
            for m in jets:
                if k != m:
                    hess = hess + term({k: (operands[k].grad, _DA), m: (operands[m].grad, _DB)}, _DA + _DB)
    if not jets:
        return Jet(val)
    return Jet(val, grad, hess)


def derive(X: Jet, f: Jet) -> Jet:
    """Directional derivative X(f); X has shape B+(n,), f has shape S."""
    return jeinsum("...a,...a->...", X, f.d())


def pair(G: Jet, Y: Jet, Z: Jet) -> Jet:
    """The scalar field g(Y, Z) with batch axes broadcast."""
    return jeinsum("ij,...i,...j->...", G, Y, Z)


def bracket(X: Jet, Y: Jet) -> Jet:
    """Lie bracket [X, Y] of vector-field jets."""
    return jeinsum("...i,...ki->...k", X, Y.d()) - jeinsum("...i,...ki->...k", Y, X.d())
