# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled elimination kernels (see ``_kernels_py`` for the reference versions)."""

from libc.stdint cimport int64_t, uint64_t


cdef inline int64_t _inv_mod(int64_t a, int64_t p) nogil:
    cdef int64_t t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


cdef inline void _reduce_all(int64_t[:, ::1] a, int64_t p) nogil:
    cdef Py_ssize_t i, j
    cdef int64_t v
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            v = a[i, j] % p
            if v < 0:
                v += p
            a[i, j] = v


cdef inline void _swap_rows(int64_t[:, ::1] a, Py_ssize_t i, Py_ssize_t k) nogil:
    cdef Py_ssize_t j
    cdef int64_t tmp
    for j in range(a.shape[1]):
        tmp = a[i, j]
        a[i, j] = a[k, j]
        a[k, j] = tmp


def rref_modp(int64_t[:, ::1] a, int64_t p):
    cdef Py_ssize_t rows = a.shape[0], cols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t inv, f
    pivots = []
    with nogil:
        _reduce_all(a, p)
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        with nogil:
            if piv != r:
                _swap_rows(a, r, piv)
            inv = _inv_mod(a[r, c], p)
            if inv != 1:
                for j in range(c, cols):
                    a[r, j] = (a[r, j] * inv) % p
            for i in range(rows):
                if i != r and a[i, c] != 0:
                    f = p - a[i, c]
                    for j in range(c, cols):
                        if a[r, j] != 0:
                            a[i, j] = (a[i, j] + f * a[r, j]) % p
        pivots.append(c)
        r += 1
    return pivots


def rank_modp(int64_t[:, ::1] a, int64_t p):
    cdef Py_ssize_t rows = a.shape[0], cols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t inv, f
    with nogil:
        _reduce_all(a, p)
        for c in range(cols):
            if r == rows:
                break
            piv = -1
            for i in range(r, rows):
                if a[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                _swap_rows(a, r, piv)
            inv = _inv_mod(a[r, c], p)
            for i in range(r + 1, rows):
                if a[i, c] != 0:
                    f = p - (a[i, c] * inv) % p
                    for j in range(c, cols):
                        if a[r, j] != 0:
                            a[i, j] = (a[i, j] + f * a[r, j]) % p
            r += 1
    return r


def rref_gf2(uint64_t[:, ::1] words, Py_ssize_t ncols):
    cdef Py_ssize_t rows = words.shape[0], nw = words.shape[1]
    cdef Py_ssize_t r = 0, c, i, k, piv, w
    cdef uint64_t mask, tmp
    pivots = []
    for c in range(ncols):
        if r == rows:
            break
        w = c >> 6
        mask = (<uint64_t>1) << (c & 63)
        piv = -1
        for i in range(r, rows):
            if words[i, w] & mask:
                piv = i
                break
        if piv < 0:
            continue
        with nogil:
            if piv != r:
                for k in range(nw):
                    tmp = words[r, k]
                    words[r, k] = words[piv, k]
                    words[piv, k] = tmp
            for i in range(rows):
                if i != r and (words[i, w] & mask):
                    for k in range(w, nw):
                        words[i, k] ^= words[r, k]
        pivots.append(c)
        r += 1
    return pivots


def rank_gfq_log(int64_t[:, ::1] lg, int64_t qm1, int64_t[::1] zech, int64_t neg):
    cdef Py_ssize_t rows = lg.shape[0], cols = lg.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t f, x, t, d, z
    with nogil:
        for c in range(cols):
            if r == rows:
                break
            piv = -1
            for i in range(r, rows):
                if lg[i, c] >= 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                _swap_rows(lg, r, piv)
            for i in range(r + 1, rows):
                if lg[i, c] < 0:
                    continue
                f = (lg[i, c] - lg[r, c] + neg) % qm1
                if f < 0:
                    f += qm1
                for j in range(c, cols):
                    if lg[r, j] < 0:
                        continue
                    t = (lg[r, j] + f) % qm1
                    x = lg[i, j]
                    if x < 0:
                        lg[i, j] = t
                    else:
                        d = (t - x) % qm1
                        if d < 0:
                            d += qm1
                        z = zech[d]
                        if z < 0:
                            lg[i, j] = -1
                        else:
                            lg[i, j] = (x + z) % qm1
            r += 1
    return r
