"""Jitted hot loops.  All arithmetic is by dense table lookup.

Every kernel takes the tables returned by ``FieldSpec.tables()``:
``add[q, q]``, ``mul[q, q]``, ``neg[q]``, ``inv[q]``.
"""

import numpy as np
from numba import njit

# per-order status while scanning minors
UNSEEN, ALL_ZERO, ALL_NONZERO, MIXED = 0, 1, 2, 3
# letter codes, base-3 digits of an encoded sequence
LET_N, LET_A, LET_S = 0, 1, 2


@njit(cache=True, nogil=True)
def det_inplace(a, m, add, mul, neg, inv):
    """Determinant of the leading m×m block of ``a``; destroys ``a``."""
    d = 1
    for c in range(m):
        piv = -1
        for r in range(c, m):
            if a[r, c] != 0:
                piv = r
                break
        if piv < 0:
            return 0
        if piv != c:
            for j in range(c, m):
                t = a[c, j]
                a[c, j] = a[piv, j]
                a[piv, j] = t
            d = neg[d]
        pv = a[c, c]
        d = mul[d, pv]
        pinv = inv[pv]
        for r in range(c + 1, m):
            if a[r, c] != 0:
                f = mul[a[r, c], pinv]
                nf = neg[f]
                for j in range(c, m):
                    a[r, j] = add[a[r, j], mul[nf, a[c, j]]]
    return d


@njit(cache=True, nogil=True)
def rank_inplace(a, rows, cols, add, mul, neg, inv):
    r = 0
    for c in range(cols):
        piv = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                t = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = t
        pinv = inv[a[r, c]]
        for i in range(r + 1, rows):
            if a[i, c] != 0:
                nf = neg[mul[a[i, c], pinv]]
                for j in range(c, cols):
                    a[i, j] = add[a[i, j], mul[nf, a[r, j]]]
        r += 1
        if r == rows:
            break
    return r


@njit(cache=True, nogil=True)
def _minor(mat, idx, k, work, add, mul, neg, inv):
    for i in range(k):
        for j in range(k):
            work[i, j] = mat[idx[i], idx[j]]
    return det_inplace(work, k, add, mul, neg, inv)


@njit(cache=True, nogil=True)
def epr_letters(mat, n, upto, census, add, mul, neg, inv):
    """Letters 1..upto of epr(mat) as codes (N=0, A=1, S=2).

    Index sets of each order are visited in lexicographic order.  Unless
    ``census`` is set, an order stops as soon as both a zero and a nonzero
    minor have been seen, and orders above the rank are N outright.
    """
    out = np.zeros(upto, dtype=np.int64)
    work = np.empty((n, n), dtype=np.int64)
    rk = n
    if not census:
        for i in range(n):
            for j in range(n):
                work[i, j] = mat[i, j]
        rk = rank_inplace(work, n, n, add, mul, neg, inv)
    idx = np.empty(n, dtype=np.int64)
    for k in range(1, upto + 1):
        if k > rk:
            out[k - 1] = LET_N
            continue
        for i in range(k):
            idx[i] = i
        seen_zero = False
        seen_nz = False
        while True:
            if _minor(mat, idx, k, work, add, mul, neg, inv) != 0:
                seen_nz = True
            else:
                seen_zero = True
            if seen_zero and seen_nz and not census:
                break
            # next k-combination of range(n) in lexicographic order
            i = k - 1
            while i >= 0 and idx[i] == n - k + i:
                i -= 1
            if i < 0:
                break
            idx[i] += 1
            for j in range(i + 1, k):
                idx[j] = idx[j - 1] + 1
        if seen_zero and seen_nz:
            out[k - 1] = LET_S
        elif seen_nz:
            out[k - 1] = LET_A
        else:
            out[k - 1] = LET_N
    return out


@njit(cache=True, nogil=True)
def all_principal_minors(mat, n, add, mul, neg, inv):
    """det(mat[mask]) for every mask in [0, 2^n); the empty minor is 1."""
    out = np.empty(1 << n, dtype=np.int64)
    out[0] = 1
    work = np.empty((n, n), dtype=np.int64)
    idx = np.empty(n, dtype=np.int64)
    for mask in range(1, 1 << n):
        k = 0
        for i in range(n):
            if (mask >> i) & 1:
                idx[k] = i
                k += 1
        out[mask] = _minor(mat, idx, k, work, add, mul, neg, inv)
    return out


@njit(cache=True, nogil=True)
def subset_letters(nonzero, n):
    """epr of every principal submatrix from a table of minors.

    ``nonzero[mask]`` says whether det(B[mask]) != 0.  Returns ``L`` with
    ``L[mask, i-1]`` the i-th letter of epr(B[mask]) (codes as above) for
    ``i <= |mask|`` and -1 beyond.
    """
    size = 1 << n
    out = np.full((size, n), -1, dtype=np.int64)
    for mask in range(1, size):
        z = np.zeros(n + 1, dtype=np.int64)
        nz = np.zeros(n + 1, dtype=np.int64)
        sub = mask
        while sub > 0:
            k = 0
            s = sub
            while s:
                s &= s - 1
                k += 1
            if nonzero[sub]:
                nz[k] += 1
            else:
                z[k] += 1
            sub = (sub - 1) & mask
        m = 0
        s = mask
        while s:
            s &= s - 1
            m += 1
        for k in range(1, m + 1):
            if z[k] and nz[k]:
                out[mask, k - 1] = LET_S
            elif nz[k]:
                out[mask, k - 1] = LET_A
            else:
                out[mask, k - 1] = LET_N
    return out


# --- shard enumeration ----------------------------------------------------------


@njit(cache=True, nogil=True)
def _level(M, n, j, status, work, idx, restrict, add, mul, neg, inv):
    """Fold minors whose largest index is j into status[j]; False = prune."""
    if j == 0:
        for k in range(n + 1):
            status[0, k] = UNSEEN
    else:
        for k in range(n + 1):
            status[j, k] = status[j - 1, k]
    for mask in range(1 << j, 1 << (j + 1)):
        k = 0
        for i in range(j + 1):
            if (mask >> i) & 1:
                idx[k] = i
                k += 1
        st = status[j, k]
        if st == MIXED:
            continue
        nzero = _minor(M, idx, k, work, add, mul, neg, inv) != 0
        if st == UNSEEN:
            status[j, k] = ALL_NONZERO if nzero else ALL_ZERO
        elif (st == ALL_NONZERO) != nzero:
            status[j, k] = MIXED
            if restrict:
                return False
    return True


@njit(cache=True, nogil=True)
def enumerate_shard(n, q, diag, row0, restrict, found, add, mul, neg, inv):
    """Visit every symmetric matrix with the given diagonal and first row.

    The free entries b[i, j], 1 <= i < j, form an odometer whose most
    significant digits belong to the lowest columns, so leading principal
    blocks change rarely and their minor statuses are reused.  With
    ``restrict`` a leading block whose epr contains S cuts off its whole
    subtree: by inheritance every extension also contains S.

    ``found[code]`` receives the odometer value of the first matrix reaching
    each encoded sequence.  Returns (matrices visited, matrices cut off).
    """
    M = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        M[i, i] = diag[i]
    for j in range(1, n):
        M[0, j] = row0[j - 1]
        M[j, 0] = row0[j - 1]
    F = (n - 1) * (n - 2) // 2
    col_of = np.zeros(max(F, 1), dtype=np.int64)
    row_of = np.zeros(max(F, 1), dtype=np.int64)
    col_last = np.zeros(n, dtype=np.int64)
    t = 0
    for j in range(2, n):
        for i in range(1, j):
            col_of[t] = j
            row_of[t] = i
            t += 1
        col_last[j] = t - 1
    weight = np.ones(max(F, 1) + 1, dtype=np.int64)  # weight[t] = q^(F-1-t)
    for t in range(F - 2, -1, -1):
        weight[t] = weight[t + 1] * q
    total = weight[0] * q if F > 0 else 1

    status = np.zeros((n, n + 1), dtype=np.int64)
    work = np.empty((n, n), dtype=np.int64)
    idx = np.empty(n, dtype=np.int64)
    p3 = np.ones(n, dtype=np.int64)
    for k in range(1, n):
        p3[k] = p3[k - 1] * 3

    for j in range(min(2, n)):
        if not _level(M, n, j, status, work, idx, restrict, add, mul, neg, inv):
            return 0, total

    digits = np.zeros(max(F, 1), dtype=np.int64)
    counter = 0
    visited = 0
    cut = 0
    start = 2
    while True:
        for t in range(F):
            if col_of[t] >= start:
                i = row_of[t]
                j = col_of[t]
                M[i, j] = digits[t]
                M[j, i] = digits[t]
        pruned_at = -1
        for j in range(start, n):
            if not _level(M, n, j, status, work, idx, restrict, add, mul, neg, inv):
                pruned_at = j
                break
        if pruned_at < 0:
            code = 0
            for k in range(1, n + 1):
                st = status[n - 1, k]
                if st == MIXED:
                    code += LET_S * p3[k - 1]
                elif st == ALL_NONZERO:
                    code += LET_A * p3[k - 1]
            if found[code] < 0:
                found[code] = counter
            visited += 1
            if F == 0:
                break
            pos = F - 1
        else:
            pos = col_last[pruned_at]
            cut += weight[pos]
        # advance the odometer at digit ``pos``, clearing everything after it
        counter = (counter // weight[pos] + 1) * weight[pos]
        for t in range(pos + 1, F):
            digits[t] = 0
        t = pos
        while t >= 0:
            digits[t] += 1
            if digits[t] < q:
                break
            digits[t] = 0
            t -= 1
        if t < 0:
            break
        start = col_of[t]
    return visited, cut
