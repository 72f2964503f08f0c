"""Pure-Python kernels.

Reference implementations of the hot loops, byte-for-byte compatible with the
compiled versions in _speedups.pyx: same signatures, dtypes and result
ordering.  Inputs are numpy arrays of element codes (int16) and the dense
lookup tables from a FieldCtx; numpy is only used at the boundaries, the
loops themselves run on plain lists.
"""

import itertools

import numpy as np

IMPLEMENTATION = "pure-python"


def dot_products(pts, vs, add, mul):
    """Inner products out[j, i] = vs[j] . pts[i], as an (u, n) int16 array."""
    pts_l = pts.tolist()
    vs_l = vs.tolist()
    add_l = add.tolist()
    mul_l = mul.tolist()
    n = len(pts_l)
    out = np.zeros((len(vs_l), n), dtype=np.int16)
    for j, v in enumerate(vs_l):
        row = out[j]
        for i, x in enumerate(pts_l):
            acc = 0
            for xc, vc in zip(x, v):
                acc = add_l[acc][mul_l[xc][vc]]
            row[i] = acc
    return out


def distance_hist(dots, v_idx, ts, scales, sub, mul, sq, q):
    """Histogram of mul[sq[dots[v_idx[j], i] - ts[j]], scales[j]] over all i, j."""
    dots_l = dots.tolist()
    sub_l = sub.tolist()
    mul_l = mul.tolist()
    sq_l = sq.tolist()
    hist = [0] * q
    for j, t, scale in zip(v_idx.tolist(), ts.tolist(), scales.tolist()):
        row = dots_l[j]
        mul_scale = [mul_l[a][scale] for a in range(q)]
        for a in row:
            hist[mul_scale[sq_l[sub_l[a][t]]]] += 1
    return np.asarray(hist, dtype=np.int64)


def trace_counts(pts, freqs, add, mul, trace, neg, p):
    """counts[j, trace(-(x . freqs[j]))] incremented for every point x."""
    pts_l = pts.tolist()
    freqs_l = freqs.tolist()
    add_l = add.tolist()
    mul_l = mul.tolist()
    # trace of the negated code, fused into one lookup
    tneg = [trace[neg[a]] for a in range(len(neg))]
    out = np.zeros((len(freqs_l), p), dtype=np.int64)
    for j, m in enumerate(freqs_l):
        row = out[j]
        for x in pts_l:
            acc = 0
            for xc, mc in zip(x, m):
                acc = add_l[acc][mul_l[xc][mc]]
            row[tneg[acc]] += 1
    return out


def orthogonal_scan(q, d, add, mul, one):
    """All d x d matrices M with M^T M = I, by scanning every candidate.

    Candidates are enumerated in row-major lexicographic order of their
    entries, so the result order is deterministic.  Returns an (m, d, d)
    int16 array.  The caller is responsible for budget checks.
    """
    add_l = add.tolist()
    mul_l = mul.tolist()
    found = []
    for flat in itertools.product(range(q), repeat=d * d):
        ok = True
        for i in range(d):
            for j in range(i, d):
                acc = 0
                for c in range(d):
                    acc = add_l[acc][mul_l[flat[c * d + i]][flat[c * d + j]]]
                if acc != (one if i == j else 0):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(flat)
    out = np.asarray(found, dtype=np.int16).reshape(len(found), d, d)
    return out
