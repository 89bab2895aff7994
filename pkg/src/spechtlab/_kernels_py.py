"""Pure numpy implementations of the elimination kernels.

These mirror ``_ext.pyx`` one-for-one and are used whenever the compiled
extension is unavailable (or ``SPECHTLAB_PURE_PYTHON=1``).  All functions
work in place on C-contiguous arrays and return the pivot columns.
"""

import numpy as np


def rref_modp(a, p):
    """Reduced row echelon form of an int64 matrix over F_p, in place."""
    rows, cols = a.shape
    np.remainder(a, p, out=a)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        if inv != 1:
            a[r, c:] = (a[r, c:] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        targets = np.flatnonzero(col)
        if targets.size:
            a[targets, c:] = (a[targets, c:] - np.outer(col[targets], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return pivots


def rank_modp(a, p):
    """Rank over F_p by forward elimination only, in place."""
    rows, cols = a.shape
    np.remainder(a, p, out=a)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        below = a[r + 1:, c]
        targets = np.flatnonzero(below) + r + 1
        if targets.size:
            f = (a[targets, c] * inv) % p
            a[targets, c:] = (a[targets, c:] - np.outer(f, a[r, c:])) % p
        r += 1
    return r


def rref_gf2(words, ncols):
    """RREF over F_2 for rows bit-packed into uint64 words, in place."""
    rows = words.shape[0]
    pivots = []
    r = 0
    one = np.uint64(1)
    for c in range(ncols):
        if r == rows:
            break
        w, b = divmod(c, 64)
        bit = np.uint64(b)
        col = (words[:, w] >> bit) & one
        nz = np.flatnonzero(col[r:])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            words[[r, i]] = words[[i, r]]
            col[[r, i]] = col[[i, r]]
        col[r] = 0
        targets = np.flatnonzero(col)
        if targets.size:
            words[targets] ^= words[r]
        pivots.append(c)
        r += 1
    return pivots


def rank_gfq_log(lg, qm1, zech, neg):
    """Rank over F_q for a matrix stored as discrete logs (-1 encodes zero).

    ``zech[d]`` is the log of ``1 + g**d`` (or -1 when that sum vanishes) and
    ``neg`` is the log of -1.
    """
    rows, cols = lg.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(lg[r:, c] >= 0)
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            lg[[r, i]] = lg[[i, r]]
        targets = np.flatnonzero(lg[r + 1:, c] >= 0) + r + 1
        if targets.size:
            prow = lg[r, c:]
            live = prow >= 0
            # row_i <- row_i - (a_ic / a_rc) * row_r
            f = (lg[targets, c] - lg[r, c] + neg) % qm1
            sub = lg[targets, c:]
            t = np.where(live[None, :], (prow[None, :] + f[:, None]) % qm1, -1)
            x_zero = sub < 0
            t_zero = t < 0
            d = (t - sub) % qm1
            z = zech[d]
            summed = np.where(z < 0, -1, (sub + z) % qm1)
            out = np.where(x_zero, t, np.where(t_zero, sub, summed))
            lg[targets, c:] = out
        r += 1
    return r
