"""Dense linear algebra over GF(q) on numpy arrays of element codes.

These work for any supported field, including ones too large for the jitted
table kernels, and for rectangular matrices (codes need them).
"""

import numpy as np

from . import _kernels
from .gf import TABLE_Q


def as_codes(a):
    a = np.array(a, dtype=np.int64)
    if a.ndim != 2:
        a = a.reshape(len(a), -1) if a.size else np.zeros((0, 0), dtype=np.int64)
    return a


def matmul(F, a, b):
    a, b = as_codes(a), as_codes(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} x {b.shape}")
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for t in range(a.shape[1]):
        out = F.vadd(out, F.vmul(a[:, t : t + 1], b[t : t + 1, :]))
    return out


def rref(F, a):
    """Reduced row echelon form; returns (R, pivot columns)."""
    r = as_codes(a).copy()
    rows, cols = r.shape
    pivots = []
    i = 0
    for c in range(cols):
        if i == rows:
            break
        nz = np.nonzero(r[i:, c])[0]
        if len(nz) == 0:
            continue
        piv = i + nz[0]
        if piv != i:
            r[[i, piv]] = r[[piv, i]]
        r[i] = F.vmul(r[i], F.inv(int(r[i, c])))
        for other in range(rows):
            if other != i and r[other, c] != 0:
                r[other] = F.vsub(r[other], F.vmul(r[i], int(r[other, c])))
        pivots.append(c)
        i += 1
    return r, pivots


def rank(F, a):
    a = as_codes(a)
    if a.size == 0:
        return 0
    if F.q <= TABLE_Q:
        add, mul, neg, inv = F.tables()
        return int(_kernels.rank_inplace(a.copy(), a.shape[0], a.shape[1], add, mul, neg, inv))
    return len(rref(F, a)[1])


def det(F, a):
    a = as_codes(a)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    if F.q <= TABLE_Q:
        add, mul, neg, inv = F.tables()
        return int(_kernels.det_inplace(a.copy(), n, add, mul, neg, inv))
    return det_python(F, a)


def det_python(F, a):
    """Pivoted elimination with field inverses, independent of the jitted path."""
    r = as_codes(a).copy()
    n = r.shape[0]
    d = 1
    for c in range(n):
        nz = np.nonzero(r[c:, c])[0]
        if len(nz) == 0:
            return 0
        piv = c + nz[0]
        if piv != c:
            r[[c, piv]] = r[[piv, c]]
            d = F.neg(d)
        pv = int(r[c, c])
        d = F.mul(d, pv)
        pinv = F.inv(pv)
        for i in range(c + 1, n):
            if r[i, c] != 0:
                r[i] = F.vsub(r[i], F.vmul(r[c], F.mul(int(r[i, c]), pinv)))
    return d


def inverse(F, a):
    a = as_codes(a)
    n = a.shape[0]
    aug = np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1)
    r, piv = rref(F, aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return r[:, n:]


def nullspace(F, a):
    """Basis (as rows) of {x : a x = 0}."""
    a = as_codes(a)
    cols = a.shape[1]
    r, piv = rref(F, a)
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for i, pc in enumerate(piv):
            v[pc] = F.neg(int(r[i, f]))
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(len(basis), cols)
