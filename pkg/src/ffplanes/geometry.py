"""Vectors, spheres, hyperplanes and rigid motions over F_q^d.

A vector is a plain tuple of element codes.  A hyperplane is the solution set
of y . v = t; its point-to-plane distance (x . v - t)**2 / ||v|| is defined
only when the normal has nonzero self-inner-product ||v|| = sum(v_i**2)
("non-degenerate").  Canonical plane parameters keep the normal on the unit
sphere or on the sphere of the fixed non-square; every nonzero vector is a
nonzero multiple of a vector on one of those spheres or of a null vector, so
this parameterization reaches every direction.

All types are immutable after construction and every operation is a pure
function; enumerations can safely be sharded across workers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _core as kernels
from .errors import (
    BudgetExceeded,
    DegeneratePlane,
    ZeroNormal,
    ZeroVector,
)
from .field import FieldCtx

DEFAULT_ENUM_BUDGET = 10_000_000

Vector = tuple


# -- vector and matrix helpers -------------------------------------------------

def vec_add(ctx: FieldCtx, x, y):
    return tuple(ctx.add(a, b) for a, b in zip(x, y))


def vec_sub(ctx: FieldCtx, x, y):
    return tuple(ctx.sub(a, b) for a, b in zip(x, y))


def vec_scale(ctx: FieldCtx, s, x):
    return tuple(ctx.mul(s, a) for a in x)


def dot(ctx: FieldCtx, x, y) -> int:
    acc = 0
    for a, b in zip(x, y):
        acc = ctx.add(acc, ctx.mul(a, b))
    return acc


def norm(ctx: FieldCtx, x) -> int:
    """Sum of squared entries (the quadratic form, not a metric)."""
    acc = 0
    for a in x:
        acc = ctx.add(acc, ctx.mul(a, a))
    return acc


def mat_vec(ctx: FieldCtx, m, x):
    return tuple(dot(ctx, row, x) for row in m)


def mat_mul(ctx: FieldCtx, a, b):
    d = len(b)
    cols = tuple(tuple(b[r][c] for r in range(d)) for c in range(len(b[0])))
    return tuple(tuple(dot(ctx, row, col) for col in cols) for row in a)


def mat_transpose(m):
    return tuple(zip(*m))


def identity_matrix(ctx: FieldCtx, d: int):
    return tuple(
        tuple(ctx.one if i == j else 0 for j in range(d)) for i in range(d)
    )


def is_orthogonal(ctx: FieldCtx, m) -> bool:
    d = len(m)
    return mat_mul(ctx, mat_transpose(m), m) == identity_matrix(ctx, d)


# -- spheres and directions ------------------------------------------------------

def _grid(ctx: FieldCtx, d: int):
    key = ("grid", d)
    if key not in ctx._cache:
        ctx._cache[key] = tuple(itertools.product(range(ctx.q), repeat=d))
    return ctx._cache[key]


def grid_array(ctx: FieldCtx, d: int) -> np.ndarray:
    """All q**d vectors in canonical order, as an (q**d, d) int16 array."""
    key = ("grid_array", d)
    if key not in ctx._cache:
        arr = np.asarray(_grid(ctx, d), dtype=np.int16).reshape(ctx.q**d, d)
        arr.setflags(write=False)
        ctx._cache[key] = arr
    return ctx._cache[key]


def sphere(ctx: FieldCtx, d: int, t: int):
    """All x in F_q^d with ||x|| = t, by full scan, in canonical order."""
    key = ("sphere", d, t)
    if key not in ctx._cache:
        ctx._cache[key] = tuple(x for x in _grid(ctx, d) if norm(ctx, x) == t)
    return ctx._cache[key]


def direction_set(ctx: FieldCtx, d: int):
    """Union of the spheres of radius 0, 1 and the fixed non-square.

    Every nonzero x equals t*v for some t != 0 and v in this set; see
    decompose_direction for the constructive witness.
    """
    key = ("directions", d)
    if key not in ctx._cache:
        merged = set(sphere(ctx, d, 0))
        merged.update(sphere(ctx, d, ctx.one))
        merged.update(sphere(ctx, d, ctx.non_square))
        ctx._cache[key] = tuple(sorted(merged))
    return ctx._cache[key]


def decompose_direction(ctx: FieldCtx, x):
    """Write x = t * v with t != 0 and v in the canonical direction set.

    Null vectors stay put with t = 1; otherwise v is the rescaling of x onto
    the unit sphere when ||x|| is a square, onto the non-square sphere when
    it is not.
    """
    if not any(x):
        raise ZeroVector("cannot decompose the zero vector")
    n = norm(ctx, x)
    if n == 0:
        return ctx.one, tuple(x)
    s = ctx.sqrt(n)
    if s is None:
        s = ctx.sqrt(ctx.div(n, ctx.non_square))
    inv_s = ctx.inv(s)
    return s, vec_scale(ctx, inv_s, x)


# -- hyperplanes -----------------------------------------------------------------

@dataclass(frozen=True)
class Hyperplane:
    """Parameterized plane {y : y . v = t}; norm is the cached ||v||."""

    v: Vector
    t: int
    norm: int

    @property
    def is_degenerate(self) -> bool:
        return self.norm == 0

    def pair(self):
        return (self.v, self.t)


def make_plane(ctx: FieldCtx, v, t: int) -> Hyperplane:
    return Hyperplane(tuple(v), t, norm(ctx, v))


def plane_distance(ctx: FieldCtx, x, h: Hyperplane) -> int:
    """(x . v - t)**2 / ||v||, exact in F_q."""
    if h.norm == 0:
        raise DegeneratePlane(f"||v|| = 0 for v = {h.v}")
    delta = ctx.sub(dot(ctx, x, h.v), h.t)
    return ctx.mul(ctx.mul(delta, delta), ctx.inv(h.norm))


def plane_points(ctx: FieldCtx, h: Hyperplane):
    """The q**(d-1) solutions of y . v = t, in canonical order.

    Works for any nonzero normal, degenerate ones included.
    """
    v = h.v
    pivot = next((i for i, c in enumerate(v) if c), None)
    if pivot is None:
        raise ZeroNormal("plane normal is the zero vector")
    d = len(v)
    inv_pivot = ctx.inv(v[pivot])
    free = [i for i in range(d) if i != pivot]
    out = []
    for rest in itertools.product(range(ctx.q), repeat=d - 1):
        partial = 0
        for i, c in zip(free, rest):
            partial = ctx.add(partial, ctx.mul(c, v[i]))
        y_pivot = ctx.mul(ctx.sub(h.t, partial), inv_pivot)
        y = list(rest)
        y.insert(pivot, y_pivot)
        out.append(tuple(y))
    out.sort()
    return out


def transform_plane(ctx: FieldCtx, h: Hyperplane, m, tau) -> Hyperplane:
    """Image of h under y -> M(y - tau); the normal Mv is not re-canonicalized."""
    new_v = mat_vec(ctx, m, h.v)
    new_t = ctx.sub(h.t, dot(ctx, tau, h.v))
    return make_plane(ctx, new_v, new_t)


def canonicalize_plane(ctx: FieldCtx, v, t: int):
    """Rescale (v, t) so the normal lies on the unit or non-square sphere.

    Distances are invariant under (v, t) -> (v/s, t/s), so this is harmless.
    """
    if norm(ctx, v) == 0:
        raise DegeneratePlane(f"||v|| = 0 for v = {tuple(v)}")
    s, unit_v = decompose_direction(ctx, v)
    return unit_v, ctx.div(t, s)


def geometric_key(ctx: FieldCtx, v, t: int):
    """Canonical label of the solution set: the smallest scaling of (v, t)."""
    return min((vec_scale(ctx, lam, v), ctx.mul(lam, t)) for lam in ctx.units())


# -- point and plane sets ----------------------------------------------------------

class PointSet:
    """Deduplicated, canonically ordered set of vectors in F_q^d."""

    def __init__(self, ctx: FieldCtx, d: int, points) -> None:
        if d < 1:
            raise ValueError("dimension must be >= 1")
        seen = set()
        for x in points:
            x = tuple(int(c) for c in x)
            if len(x) != d:
                raise ValueError(f"point {x} does not have dimension {d}")
            if any(not 0 <= c < ctx.q for c in x):
                raise ValueError(f"point {x} has codes outside F_{ctx.q}")
            seen.add(x)
        self.ctx = ctx
        self.d = d
        self.points = tuple(sorted(seen))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, x):
        return tuple(x) in self._index

    @cached_property
    def _index(self):
        return frozenset(self.points)

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.asarray(self.points, dtype=np.int16).reshape(len(self.points), self.d)
        arr.setflags(write=False)
        return arr

    def to_json_dict(self, construction=None) -> dict:
        obj = {
            "field": self.ctx.descriptor(),
            "d": self.d,
            "points": [[list(self.ctx.coeffs(c)) for c in x] for x in self.points],
        }
        if construction is not None:
            obj["construction"] = construction
        return obj

    @classmethod
    def from_json_dict(cls, obj, ctx: FieldCtx | None = None) -> "PointSet":
        if ctx is None:
            ctx = FieldCtx.from_descriptor(obj["field"])
        pts = [tuple(ctx.from_coeffs(c) for c in x) for x in obj["points"]]
        return cls(ctx, int(obj["d"]), pts)

    def __repr__(self):
        return f"PointSet(q={self.ctx.q}, d={self.d}, n={len(self.points)})"


class PlaneSet:
    """Deduplicated set of non-degenerate planes with canonical normals.

    Members are parameter pairs; (v, t) and (-v, -t) describe the same
    geometric plane but count as two members, matching the pair-based
    statistics downstream.  Use geometric_plane_count for the deduplicated
    geometric count.
    """

    def __init__(self, ctx: FieldCtx, d: int, pairs) -> None:
        if d < 1:
            raise ValueError("dimension must be >= 1")
        canonical_norms = (ctx.one, ctx.non_square)
        seen = {}
        for v, t in pairs:
            v = tuple(int(c) for c in v)
            t = int(t)
            if len(v) != d:
                raise ValueError(f"normal {v} does not have dimension {d}")
            if any(not 0 <= c < ctx.q for c in v) or not 0 <= t < ctx.q:
                raise ValueError(f"plane ({v}, {t}) has codes outside F_{ctx.q}")
            h = make_plane(ctx, v, t)
            if h.norm == 0:
                raise DegeneratePlane(f"plane normal {v} has ||v|| = 0")
            if h.norm not in canonical_norms:
                raise ValueError(
                    f"normal {v} has ||v|| = {h.norm}; canonicalize_plane first"
                )
            seen[(v, t)] = h
        self.ctx = ctx
        self.d = d
        self.planes = tuple(seen[key] for key in sorted(seen))

    def __len__(self):
        return len(self.planes)

    def __iter__(self):
        return iter(self.planes)

    @cached_property
    def _arrays(self):
        """Distinct normals plus per-plane indices into them."""
        normals = []
        index_of = {}
        v_idx, ts, scales = [], [], []
        for h in self.planes:
            if h.v not in index_of:
                index_of[h.v] = len(normals)
                normals.append(h.v)
            v_idx.append(index_of[h.v])
            ts.append(h.t)
            scales.append(self.ctx.inv(h.norm))
        normal_array = np.asarray(normals, dtype=np.int16).reshape(len(normals), self.d)
        return (
            normal_array,
            np.asarray(v_idx, dtype=np.intc),
            np.asarray(ts, dtype=np.int16),
            np.asarray(scales, dtype=np.int16),
        )

    @property
    def normal_array(self):
        return self._arrays[0]

    @property
    def normal_index(self):
        return self._arrays[1]

    @property
    def offsets(self):
        return self._arrays[2]

    @property
    def scales(self):
        return self._arrays[3]

    @cached_property
    def normal_multiplicity(self):
        """Offsets carried by each distinct normal, aligned with normal_array."""
        counts = np.bincount(self.normal_index, minlength=len(self.normal_array))
        return counts.astype(np.int64)

    def geometric_plane_count(self) -> int:
        """Number of distinct solution sets among the stored pairs."""
        return len({geometric_key(self.ctx, h.v, h.t) for h in self.planes})

    def to_json_dict(self, construction=None) -> dict:
        ctx = self.ctx
        obj = {
            "field": ctx.descriptor(),
            "d": self.d,
            "planes": [
                {
                    "v": [list(ctx.coeffs(c)) for c in h.v],
                    "t": list(ctx.coeffs(h.t)),
                }
                for h in self.planes
            ],
        }
        if construction is not None:
            obj["construction"] = construction
        return obj

    @classmethod
    def from_json_dict(cls, obj, ctx: FieldCtx | None = None) -> "PlaneSet":
        if ctx is None:
            ctx = FieldCtx.from_descriptor(obj["field"])
        pairs = [
            (
                tuple(ctx.from_coeffs(c) for c in rec["v"]),
                ctx.from_coeffs(rec["t"]),
            )
            for rec in obj["planes"]
        ]
        return cls(ctx, int(obj["d"]), pairs)

    def __repr__(self):
        return f"PlaneSet(q={self.ctx.q}, d={self.d}, n={len(self.planes)})"


# -- rigid motions -------------------------------------------------------------------

def orthogonal_group(ctx: FieldCtx, d: int, budget: int = DEFAULT_ENUM_BUDGET):
    """All M with M^T M = I, by exhaustive scan of the q**(d*d) candidates.

    Raises BudgetExceeded before scanning when the candidate count is above
    the budget; the cost contract is deliberately explicit.
    """
    candidates = ctx.q ** (d * d)
    if candidates > budget:
        raise BudgetExceeded(candidates, budget)
    key = ("orthogonal", d)
    if key not in ctx._cache:
        arr = kernels.orthogonal_scan(
            ctx.q, d, ctx.add_table, ctx.mul_table, ctx.one
        )
        ctx._cache[key] = tuple(
            tuple(tuple(int(c) for c in row) for row in m) for m in arr
        )
    return ctx._cache[key]


def find_rigid_motion(
    ctx: FieldCtx,
    x,
    h: Hyperplane,
    x2,
    h2: Hyperplane,
    budget: int = DEFAULT_ENUM_BUDGET,
):
    """Witness (M, tau) of a rigid motion taking (x, h) onto (x2, h2).

    The motion is y -> M(y - x) + x2: translate x to x2, then rotate about
    the image point.  tau = x - x2 is the translation part.  Every rigid
    motion sending x to x2 has this shape, so the exhaustive scan over the
    orthogonal group is a complete search.  Planes compare as point sets.
    Returns None when no motion exists.  The identity is tried first, so
    identical configurations yield (I, 0).
    """
    if h.is_degenerate or h2.is_degenerate:
        raise DegeneratePlane("rigid-motion search needs non-degenerate planes")
    d = len(x)
    target = frozenset(plane_points(ctx, h2))
    source = plane_points(ctx, h)
    tau = vec_sub(ctx, x, x2)
    ident = identity_matrix(ctx, d)
    group = orthogonal_group(ctx, d, budget)
    ordered = itertools.chain((ident,), (m for m in group if m != ident))
    for m in ordered:
        image = frozenset(
            vec_add(ctx, mat_vec(ctx, m, vec_sub(ctx, y, x)), x2) for y in source
        )
        if image == target:
            return m, tau
    return None


def config_orbit_count(e: PointSet, f: PlaneSet, budget: int = DEFAULT_ENUM_BUDGET) -> int:
    """Exact number of rigid-motion classes among the (point, plane) pairs.

    Each orbit contains configurations whose point sits at the origin, namely
    (0, {y : y . Mv = t - x . v}) for M in the orthogonal group, so the
    smallest geometric label over M identifies the orbit.
    """
    ctx = e.ctx
    group = orthogonal_group(ctx, e.d, budget)
    labels = set()
    for h in f.planes:
        keys_by_offset = {}
        for x in e.points:
            t_moved = ctx.sub(h.t, dot(ctx, x, h.v))
            if t_moved not in keys_by_offset:
                keys_by_offset[t_moved] = min(
                    geometric_key(ctx, mat_vec(ctx, m, h.v), t_moved) for m in group
                )
            labels.add(keys_by_offset[t_moved])
    return len(labels)
