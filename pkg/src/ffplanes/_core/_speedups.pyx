# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled kernels; see py_kernels.py for the reference semantics."""

import numpy as np

IMPLEMENTATION = "compiled"


def dot_products(const short[:, ::1] pts, const short[:, ::1] vs, const short[:, ::1] add, const short[:, ::1] mul):
    cdef Py_ssize_t n = pts.shape[0], d = pts.shape[1], u = vs.shape[0]
    out = np.zeros((u, n), dtype=np.int16)
    cdef short[:, ::1] o = out
    cdef Py_ssize_t i, j, c
    cdef short acc
    for j in range(u):
        for i in range(n):
            acc = 0
            for c in range(d):
                acc = add[acc, mul[pts[i, c], vs[j, c]]]
            o[j, i] = acc
    return out


def distance_hist(const short[:, ::1] dots, const int[::1] v_idx, const short[::1] ts,
                  const short[::1] scales, const short[:, ::1] sub, const short[:, ::1] mul,
                  const short[::1] sq, int q):
    hist = np.zeros(q, dtype=np.int64)
    cdef long long[::1] h = hist
    cdef Py_ssize_t m = v_idx.shape[0], n = dots.shape[1], j, i
    cdef short t, scale
    cdef Py_ssize_t row
    for j in range(m):
        row = v_idx[j]
        t = ts[j]
        scale = scales[j]
        for i in range(n):
            h[mul[sq[sub[dots[row, i], t]], scale]] += 1
    return hist


def trace_counts(const short[:, ::1] pts, const short[:, ::1] freqs, const short[:, ::1] add,
                 const short[:, ::1] mul, const short[::1] trace, const short[::1] neg, int p):
    cdef Py_ssize_t n = pts.shape[0], d = pts.shape[1], nf = freqs.shape[0]
    out = np.zeros((nf, p), dtype=np.int64)
    cdef long long[:, ::1] o = out
    cdef Py_ssize_t i, j, c
    cdef short acc
    for j in range(nf):
        for i in range(n):
            acc = 0
            for c in range(d):
                acc = add[acc, mul[pts[i, c], freqs[j, c]]]
            o[j, trace[neg[acc]]] += 1
    return out


def orthogonal_scan(int q, int d, const short[:, ::1] add, const short[:, ::1] mul, int one):
    cdef Py_ssize_t dd = d * d
    digits_arr = np.zeros(dd, dtype=np.int16)
    cdef short[::1] digits = digits_arr
    cdef Py_ssize_t pos, i, j, c
    cdef short acc
    cdef bint ok, done = False
    found = []
    while not done:
        ok = True
        for i in range(d):
            if not ok:
                break
            for j in range(i, d):
                acc = 0
                for c in range(d):
                    acc = add[acc, mul[digits[c * d + i], digits[c * d + j]]]
                if acc != (one if i == j else 0):
                    ok = False
                    break
        if ok:
            found.append(digits_arr.copy())
        # advance the odometer; last entry varies fastest
        pos = dd - 1
        while True:
            digits[pos] += 1
            if digits[pos] < q:
                break
            digits[pos] = 0
            pos -= 1
            if pos < 0:
                done = True
                break
    if found:
        out = np.stack(found).astype(np.int16).reshape(len(found), d, d)
    else:
        out = np.zeros((0, d, d), dtype=np.int16)
    return out
