"""Generators for test configurations.

Everything here is a pure function of its parameters and seed.  Sampling
shuffles the canonical enumeration with Python's Mersenne Twister
(random.Random(seed), Fisher-Yates shuffle) and takes a prefix; the
generator is named in PRNG_INFO so reports can state how instances were
drawn.  Seeds for derived streams are folded with splitmix64 steps, see
derive_seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import BudgetExceeded, TooLarge
from .field import FieldCtx, make_field
from .geometry import (
    DEFAULT_ENUM_BUDGET,
    PlaneSet,
    PointSet,
    canonicalize_plane,
    norm,
    sphere,
    _grid,
)

PRNG_INFO = {
    "shuffle": "mt19937 (python random.Random) Fisher-Yates",
    "seed_derivation": "splitmix64 fold",
    "version": 1,
}

_MASK64 = (1 << 64) - 1


def _mix64(z: int) -> int:
    # splitmix64 finalizer
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(*parts: int) -> int:
    """Deterministically fold integers into one 64-bit stream seed."""
    acc = 0
    for part in parts:
        acc = _mix64(acc ^ (int(part) & _MASK64))
    return acc


@dataclass(frozen=True)
class Construction:
    """Provenance record attached to generated sets."""

    kind: str
    seed: int | None
    parameters: tuple

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "seed": self.seed,
            "parameters": dict(self.parameters),
            "prng": PRNG_INFO,
        }


def canonical_plane_pairs(ctx: FieldCtx, d: int):
    """All non-degenerate canonical pairs: normals on the unit and non-square
    spheres, every offset."""
    key = ("canonical_pairs", d)
    if key not in ctx._cache:
        normals = sorted(set(sphere(ctx, d, ctx.one)) | set(sphere(ctx, d, ctx.non_square)))
        ctx._cache[key] = tuple((v, t) for v in normals for t in range(ctx.q))
    return ctx._cache[key]


def random_point_set(ctx: FieldCtx, d: int, n: int, seed: int) -> PointSet:
    """Uniform n-subset of the grid: seeded shuffle of the canonical
    enumeration, first n taken."""
    population = _grid(ctx, d)
    if not 0 <= n <= len(population):
        raise TooLarge(f"requested {n} of {len(population)} points")
    order = list(population)
    random.Random(seed).shuffle(order)
    return PointSet(ctx, d, order[:n])


def random_plane_set(ctx: FieldCtx, d: int, m: int, seed: int) -> PlaneSet:
    """Uniform m-subset of the non-degenerate canonical pairs."""
    population = canonical_plane_pairs(ctx, d)
    if not 0 <= m <= len(population):
        raise TooLarge(f"requested {m} of {len(population)} planes")
    order = list(population)
    random.Random(seed).shuffle(order)
    return PlaneSet(ctx, d, order[:m])


def full_configuration(ctx: FieldCtx, d: int):
    """The whole grid against every non-degenerate canonical pair."""
    points = PointSet(ctx, d, _grid(ctx, d))
    planes = PlaneSet(ctx, d, canonical_plane_pairs(ctx, d))
    return points, planes


@dataclass(frozen=True)
class SubfieldConfiguration:
    """Prime-subfield grid and planes inside F_(p**2)^d, canonicalized.

    plane_pairs records (pre-canonical, canonical) parameter pairs for audit;
    canonical rescaling does not change any distance.
    """

    ctx: FieldCtx
    points: PointSet
    planes: PlaneSet
    plane_pairs: tuple
    construction: Construction


def subfield_configuration(p: int, d: int, budget: int = DEFAULT_ENUM_BUDGET) -> SubfieldConfiguration:
    """Points and planes of the prime subfield, inside the quadratic extension.

    E is the embedded copy of F_p^d; F holds every plane whose normal and
    offset lie in the embedded subfield with non-null normal, rescaled into
    canonical parameters.  Every point-to-plane distance is prime-subfield
    arithmetic, so at most p distinct values (p - 1 nonzero ones) can occur,
    however large q = p**2 is.
    """
    ctx = make_field(p, 2)
    if ctx.q**d > budget:
        raise BudgetExceeded(ctx.q**d, budget)
    embedded = [ctx.embed_subfield(a) for a in range(p)]
    import itertools

    points = PointSet(ctx, d, itertools.product(embedded, repeat=d))
    pairs = []
    for v in itertools.product(embedded, repeat=d):
        if not any(v) or norm(ctx, v) == 0:
            continue
        for t in embedded:
            pairs.append(((v, t), canonicalize_plane(ctx, v, t)))
    planes = PlaneSet(ctx, d, (post for _, post in pairs))
    construction = Construction(
        kind="subfield", seed=None, parameters=(("p", p), ("d", d))
    )
    return SubfieldConfiguration(ctx, points, planes, tuple(pairs), construction)
