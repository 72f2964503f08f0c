"""Geometry: spheres, directions, planes, distances, rigid motions."""

import itertools
import random

import pytest

from ffplanes import (
    BudgetExceeded,
    DegeneratePlane,
    PlaneSet,
    PointSet,
    ZeroNormal,
    ZeroVector,
    canonicalize_plane,
    config_orbit_count,
    decompose_direction,
    direction_set,
    dot,
    find_rigid_motion,
    full_configuration,
    geometric_key,
    identity_matrix,
    is_orthogonal,
    make_field,
    make_plane,
    mat_vec,
    norm,
    orthogonal_group,
    plane_distance,
    plane_points,
    sphere,
    transform_plane,
    vec_add,
    vec_scale,
    vec_sub,
)


def brute_sphere(q, d, t):
    """Oracle: plain modular arithmetic, no field tables (prime q only)."""
    return {
        x for x in itertools.product(range(q), repeat=d)
        if sum(c * c for c in x) % q == t
    }


# -- norms and spheres --------------------------------------------------------------

def test_norm_examples(f5, f3):
    assert norm(f5, (1, 2)) == 0
    assert norm(f5, (1, 1)) == 2
    assert norm(f3, (1, 1, 1)) == 0


def test_sphere_examples(f3, f5):
    s = sphere(f3, 2, 1)
    assert set(s) == {(0, 1), (0, 2), (1, 0), (2, 0)} and len(s) == 4
    assert len(sphere(f5, 2, 0)) == 9  # -1 is a square mod 5
    assert sphere(f3, 2, 0) == ((0, 0),)  # -1 is a non-square mod 3


@pytest.mark.parametrize("p,d", [(3, 2), (5, 2), (7, 2), (3, 3)])
def test_sphere_against_modular_oracle(p, d):
    ctx = make_field(p)
    for t in ctx.elements():
        assert set(sphere(ctx, d, t)) == brute_sphere(p, d, t)


def test_sphere_sizes_partition_grid(small_fields):
    for ctx in small_fields:
        for d in (2, 3):
            assert sum(len(sphere(ctx, d, t)) for t in ctx.elements()) == ctx.q**d


# -- direction sets ------------------------------------------------------------------

def test_direction_set_sizes(f3, f5):
    assert len(direction_set(f3, 2)) == 9  # 1 + 4 + 4
    assert len(direction_set(f5, 2)) == 17  # 9 + 4 + 4


def test_decompose_examples(f5):
    assert decompose_direction(f5, (2, 0)) == (2, (1, 0))
    assert decompose_direction(f5, (1, 1)) == (1, (1, 1))
    assert decompose_direction(f5, (3, 4)) == (1, (3, 4))
    with pytest.raises(ZeroVector):
        decompose_direction(f5, (0, 0))


def test_decompose_property_exhaustive(small_fields):
    for ctx in small_fields:
        for d in (2, 3):
            directions = set(direction_set(ctx, d))
            for x in itertools.product(range(ctx.q), repeat=d):
                if not any(x):
                    continue
                t, v = decompose_direction(ctx, x)
                assert t != 0
                assert v in directions
                assert vec_scale(ctx, t, v) == x


# -- plane basics -------------------------------------------------------------------

def test_plane_distance_examples(f5):
    h = make_plane(f5, (1, 0), 2)
    assert plane_distance(f5, (0, 0), h) == 4
    h2 = make_plane(f5, (1, 1), 0)
    assert plane_distance(f5, (1, 1), h2) == 2  # 4 * inv(2) = 12 = 2 mod 5
    assert plane_distance(f5, (3, 2), h2) == 0  # on the plane
    degenerate = make_plane(f5, (1, 2), 0)
    assert degenerate.is_degenerate
    with pytest.raises(DegeneratePlane):
        plane_distance(f5, (0, 0), degenerate)


def test_plane_points_examples(f3, f5):
    pts = plane_points(f3, make_plane(f3, (1, 0), 1))
    assert pts == [(1, 0), (1, 1), (1, 2)]
    for v, t in [((1, 1), 3), ((2, 3), 1), ((1, 2), 4)]:
        h = make_plane(f5, v, t)
        pts = plane_points(f5, h)
        assert len(pts) == 5
        assert all(dot(f5, y, v) == t for y in pts)
    h3 = make_plane(f3, (1, 2, 2), 1)
    assert len(plane_points(f3, h3)) == 9
    with pytest.raises(ZeroNormal):
        plane_points(f3, make_plane(f3, (0, 0), 1))


def test_plane_points_match_full_scan(f5):
    rng = random.Random(1)
    grid = list(itertools.product(range(5), repeat=2))
    for _ in range(10):
        v = (rng.randrange(5), rng.randrange(5))
        if not any(v):
            continue
        t = rng.randrange(5)
        h = make_plane(f5, v, t)
        scan = sorted(y for y in grid if dot(f5, y, v) == t)
        assert plane_points(f5, h) == scan


def test_transform_plane_identity_and_reflection(f5):
    h = make_plane(f5, (1, 1), 3)
    ident = identity_matrix(f5, 2)
    assert transform_plane(f5, h, ident, (0, 0)) == h
    minus = tuple(tuple(f5.neg(c) for c in row) for row in ident)
    image = transform_plane(f5, h, minus, (0, 0))
    assert image.v == (4, 4) and image.t == 3


def test_transform_plane_is_pointwise_image(f3):
    group = orthogonal_group(f3, 2)
    grid = list(itertools.product(range(3), repeat=2))
    planes = [make_plane(f3, v, t) for v in grid if any(v) for t in range(3)]
    for m in group:
        for tau in grid:
            for h in planes:
                image = transform_plane(f3, h, m, tau)
                moved = sorted(
                    mat_vec(f3, m, vec_sub(f3, y, tau)) for y in plane_points(f3, h)
                )
                assert plane_points(f3, image) == moved


def test_canonicalize_examples(f5):
    assert canonicalize_plane(f5, (2, 0), 4) == ((1, 0), 2)
    assert canonicalize_plane(f5, (1, 1), 3) == ((1, 1), 3)
    with pytest.raises(DegeneratePlane):
        canonicalize_plane(f5, (1, 2), 0)


def test_canonicalize_preserves_distance_exhaustive(f5):
    grid = list(itertools.product(range(5), repeat=2))
    for v in grid:
        if not any(v) or norm(f5, v) == 0:
            continue
        for t in range(5):
            cv, ct = canonicalize_plane(f5, v, t)
            assert norm(f5, cv) in (f5.one, f5.non_square)
            assert canonicalize_plane(f5, cv, ct) == (cv, ct)  # idempotent
            before = make_plane(f5, v, t)
            after = make_plane(f5, cv, ct)
            for x in grid:
                assert plane_distance(f5, x, before) == plane_distance(f5, x, after)


# -- point and plane sets --------------------------------------------------------------

def test_point_set_dedupes_and_sorts(f3):
    ps = PointSet(f3, 2, [(2, 1), (0, 0), (2, 1)])
    assert ps.points == ((0, 0), (2, 1))
    assert (2, 1) in ps and (1, 1) not in ps
    with pytest.raises(ValueError):
        PointSet(f3, 2, [(1, 2, 0)])
    with pytest.raises(ValueError):
        PointSet(f3, 2, [(5, 0)])


def test_plane_set_validates(f5):
    with pytest.raises(DegeneratePlane):
        PlaneSet(f5, 2, [((1, 2), 0)])  # null normal
    with pytest.raises(ValueError):
        PlaneSet(f5, 2, [((2, 0), 1)])  # norm 4: not canonical
    ps = PlaneSet(f5, 2, [((1, 0), 1), ((1, 0), 1), ((0, 1), 2)])
    assert len(ps) == 2


def test_geometric_plane_count(f5):
    v = (1, 0)
    anti = (tuple(f5.neg(c) for c in v), f5.neg(3))
    ps = PlaneSet(f5, 2, [(v, 3), anti])
    assert len(ps) == 2
    assert ps.geometric_plane_count() == 1
    assert geometric_key(f5, v, 3) == geometric_key(f5, *anti)


# -- orthogonal group -------------------------------------------------------------------

def test_orthogonal_group_d1(f5):
    group = orthogonal_group(f5, 1)
    assert sorted(group) == [((1,),), ((4,),)]


def test_orthogonal_group_sizes(f3, f5):
    g3 = orthogonal_group(f3, 2)
    g5 = orthogonal_group(f5, 2)
    assert len(g3) == 8 and len(g5) == 8
    for ctx, group in ((f3, g3), (f5, g5)):
        for m in group:
            assert is_orthogonal(ctx, m)
    # no duplicates, deterministic order
    assert len(set(g3)) == 8
    assert list(g3) == sorted(g3)


def test_orthogonal_group_matches_brute_force(f3):
    brute = [
        m
        for m in (
            ((a, b), (c, d))
            for a in range(3) for b in range(3)
            for c in range(3) for d in range(3)
        )
        if is_orthogonal(f3, m)
    ]
    assert sorted(orthogonal_group(f3, 2)) == sorted(brute)


def test_orthogonal_group_budget(f5):
    with pytest.raises(BudgetExceeded) as info:
        orthogonal_group(f5, 2, budget=10)
    assert info.value.required == 5**4


# -- rigid motions --------------------------------------------------------------------

def test_identity_witness(f5):
    h = make_plane(f5, (1, 0), 2)
    x = (3, 3)
    m, tau = find_rigid_motion(f5, x, h, x, h)
    assert m == identity_matrix(f5, 2)
    assert tau == (0, 0)


def test_witness_exists_for_equal_nonzero_distance(f3):
    e, f = full_configuration(f3, 2)
    configs = [(x, h) for x in e.points for h in f.planes]
    rng = random.Random(9)
    by_r = {}
    for x, h in configs:
        by_r.setdefault(plane_distance(f3, x, h), []).append((x, h))
    for r, bucket in by_r.items():
        if r == 0:
            continue
        for _ in range(40):
            (x, h), (x2, h2) = rng.choice(bucket), rng.choice(bucket)
            witness = find_rigid_motion(f3, x, h, x2, h2)
            assert witness is not None
            m, tau = witness
            assert tau == vec_sub(f3, x, x2)
            # the witness motion really maps the configuration
            moved = frozenset(
                vec_add(f3, mat_vec(f3, m, vec_sub(f3, y, x)), x2)
                for y in plane_points(f3, h)
            )
            assert moved == frozenset(plane_points(f3, h2))


def test_no_witness_across_distances(f3):
    # distance 1 versus distance 0
    h = make_plane(f3, (1, 0), 1)
    assert plane_distance(f3, (0, 0), h) == 1
    assert plane_distance(f3, (1, 0), h) == 0
    assert find_rigid_motion(f3, (0, 0), h, (1, 0), h) is None


def test_motion_invariance_exhaustive_q3(f3):
    e, f = full_configuration(f3, 2)
    grid = list(itertools.product(range(3), repeat=2))
    for m in orthogonal_group(f3, 2):
        for tau in grid:
            for x in e.points:
                moved_x = mat_vec(f3, m, vec_sub(f3, x, tau))
                for h in f.planes:
                    assert plane_distance(f3, x, h) == plane_distance(
                        f3, moved_x, transform_plane(f3, h, m, tau)
                    )


def test_motion_invariance_sampled_q5(f5):
    rng = random.Random(17)
    group = orthogonal_group(f5, 2)
    e, f = full_configuration(f5, 2)
    for _ in range(300):
        m = rng.choice(group)
        tau = (rng.randrange(5), rng.randrange(5))
        x = rng.choice(e.points)
        h = rng.choice(f.planes)
        moved_x = mat_vec(f5, m, vec_sub(f5, x, tau))
        assert plane_distance(f5, x, h) == plane_distance(
            f5, moved_x, transform_plane(f5, h, m, tau)
        )


def brute_orbit_count(ctx, e, f):
    """Oracle: canonical label from scanning every motion (M, b) applied to
    the configuration, with planes identified by their point sets."""
    group = orthogonal_group(ctx, e.d)
    grid = list(itertools.product(range(ctx.q), repeat=e.d))
    labels = set()
    for x in e.points:
        for h in f.planes:
            pts = plane_points(ctx, h)
            best = None
            for m in group:
                mx = mat_vec(ctx, m, x)
                mpts = [mat_vec(ctx, m, y) for y in pts]
                for b in grid:
                    cand = (
                        vec_add(ctx, mx, b),
                        tuple(sorted(vec_add(ctx, y, b) for y in mpts)),
                    )
                    if best is None or cand < best:
                        best = cand
            labels.add(best)
    return len(labels)


def test_config_orbit_count_against_brute_oracle(f3):
    e_full, f_full = full_configuration(f3, 2)
    rng = random.Random(23)
    e = PointSet(f3, 2, rng.sample(e_full.points, 4))
    f = PlaneSet(f3, 2, [h.pair() for h in rng.sample(f_full.planes, 6)])
    assert config_orbit_count(e, f) == brute_orbit_count(f3, e, f)
    assert config_orbit_count(e_full, f_full) == brute_orbit_count(f3, e_full, f_full)
