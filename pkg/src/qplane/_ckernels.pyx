# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops for the census and audit routines.

Every function here has a line-for-line counterpart in ``_pykernels``.
Point indices are ``x * q + y``; tables are flattened ``q^2 x q^2`` arrays.
"""

import numpy as np
cimport numpy as cnp

ctypedef long long i64

BACKEND = "cython"


cdef inline i64 _min6(i64 a, i64 b, i64 c, i64 d, i64 e, i64 f) nogil:
    if b < a: a = b
    if c < a: a = c
    if d < a: a = d
    if e < a: a = e
    if f < a: a = f
    return a


cdef inline void _sort3(i64 *a, i64 *b, i64 *c) nogil:
    cdef i64 t
    if a[0] > b[0]:
        t = a[0]; a[0] = b[0]; b[0] = t
    if b[0] > c[0]:
        t = b[0]; b[0] = c[0]; c[0] = t
    if a[0] > b[0]:
        t = a[0]; a[0] = b[0]; b[0] = t


def triangle_marks(const i64[:] idx, const i64[:] sub, const i64[:] canon,
                   const i64[:] dist, int q, bint include_degenerate):
    cdef i64 q2 = <i64>q * q
    cdef Py_ssize_t n = idx.shape[0]
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] cong = np.zeros(q2 * q2, dtype=np.uint8)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] ordered = np.zeros(q2 * q2, dtype=np.uint8)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] sides = np.zeros(q2 * q, dtype=np.uint8)
    cdef unsigned char[:] cv = cong
    cdef unsigned char[:] ov = ordered
    cdef unsigned char[:] sv = sides
    cdef Py_ssize_t i, j, k, j0, k0
    cdef i64 a, b, c, ab, ac, ba, bc, ca, cb, k1, k2, k3, k4, k5, k6
    cdef i64 d1, e1, e2, e3
    cdef int off = 0 if include_degenerate else 1
    with nogil:
        for i in range(n):
            a = idx[i]
            j0 = i + off
            for j in range(j0, n):
                b = idx[j]
                ab = sub[b * q2 + a]
                ba = sub[a * q2 + b]
                d1 = dist[a * q2 + b]
                k0 = j + off
                for k in range(k0, n):
                    c = idx[k]
                    ac = sub[c * q2 + a]
                    bc = sub[c * q2 + b]
                    ca = sub[a * q2 + c]
                    cb = sub[b * q2 + c]
                    k1 = canon[ab * q2 + ac]
                    k2 = canon[ac * q2 + ab]
                    k3 = canon[ba * q2 + bc]
                    k4 = canon[bc * q2 + ba]
                    k5 = canon[ca * q2 + cb]
                    k6 = canon[cb * q2 + ca]
                    ov[k1] = 1; ov[k2] = 1; ov[k3] = 1
                    ov[k4] = 1; ov[k5] = 1; ov[k6] = 1
                    cv[_min6(k1, k2, k3, k4, k5, k6)] = 1
                    e1 = d1
                    e2 = dist[b * q2 + c]
                    e3 = dist[c * q2 + a]
                    _sort3(&e1, &e2, &e3)
                    sv[(e1 * q + e2) * q + e3] = 1
    return cong, ordered, sides


def pair_count(const i64[:] xs, const i64[:] ys, int q, int ell):
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t i, j
    cdef i64 dx, dy, total = 0
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                dx = xs[i] - xs[j]
                dy = ys[i] - ys[j]
                if (dx * dx + dy * dy) % q == ell:
                    total += 1
    return total


def uncovered_targets(const i64[:] ex, const i64[:] ey, const unsigned char[:] pmask, int q):
    """1 for every target y such that no line l_{x->y}, x in E, meets P."""
    cdef i64 q2 = <i64>q * q
    cdef i64 h = (q + 1) // 2
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] out = np.ones(q2, dtype=np.uint8)
    cdef unsigned char[:] ov = out
    cdef Py_ssize_t n = ex.shape[0]
    cdef i64 y1, y2, m1, m2, w1, w2, r, p1, p2
    cdef Py_ssize_t t
    cdef bint hit
    with nogil:
        for y1 in range(q):
            for y2 in range(q):
                hit = False
                for t in range(n):
                    m1 = (ex[t] + y1) * h % q
                    m2 = (ey[t] + y2) * h % q
                    w1 = ((ey[t] - y2 + q) % q) * h % q
                    w2 = ((y1 - ex[t] + q) % q) * h % q
                    for r in range(q):
                        p1 = (m1 + r * w1) % q
                        p2 = (m2 + r * w2) % q
                        if pmask[(p1 * q + p2) * q + r]:
                            hit = True
                            break
                    if hit:
                        break
                if hit:
                    ov[y1 * q + y2] = 0
    return out


def difference_cover(const i64[:] idx, const i64[:] sub, i64 npts, int n):
    """Number of distinct tuples (e2-e1, ..., en-e1) over E^n."""
    cdef Py_ssize_t m = idx.shape[0]
    cdef int slots = n - 1
    cdef i64 size = 1
    cdef int s
    for s in range(slots):
        size *= npts
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] seen = np.zeros(size, dtype=np.uint8)
    cdef unsigned char[:] sv = seen
    cdef cnp.ndarray[cnp.int64_t, ndim=1] diffs = np.zeros(m, dtype=np.int64)
    cdef i64[:] dv = diffs
    cdef cnp.ndarray[cnp.int64_t, ndim=1] ctr = np.zeros(max(slots, 1), dtype=np.int64)
    cdef i64[:] cnt = ctr
    cdef Py_ssize_t i, j
    cdef i64 code
    if slots == 0:
        return 1 if m > 0 else 0
    with nogil:
        for i in range(m):
            for j in range(m):
                dv[j] = sub[idx[j] * npts + idx[i]]
            for s in range(slots):
                cnt[s] = 0
            while True:
                code = 0
                for s in range(slots):
                    code = code * npts + dv[cnt[s]]
                sv[code] = 1
                s = slots - 1
                while s >= 0:
                    cnt[s] += 1
                    if cnt[s] < m:
                        break
                    cnt[s] = 0
                    s -= 1
                if s < 0:
                    break
    return int(seen.sum())
