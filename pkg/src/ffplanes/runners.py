"""Suite runners behind the CLI.

Each runner returns a RunResult holding the CSV text, a JSON-ready summary
dict and an exit code (0 only when every checked inequality passed).  Output
is deterministic for a fixed config and seed: instances derive their seeds
with derive_seed, rows are emitted in enumeration order, and nothing
time-dependent is written.  Skipped checks are listed in the summary, never
dropped silently.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .constructions import (
    PRNG_INFO,
    canonical_plane_pairs,
    derive_seed,
    full_configuration,
    random_plane_set,
    random_point_set,
    subfield_configuration,
)
from .distance import bound_terms, distance_report, report_from_histogram, histogram_vector
from .errors import BudgetExceeded
from .field import make_field
from .geometry import (
    DEFAULT_ENUM_BUDGET,
    config_orbit_count,
    find_rigid_motion,
    make_plane,
    mat_vec,
    orthogonal_group,
    plane_distance,
    transform_plane,
    vec_sub,
    _grid,
)
from .spectral import (
    energy_identity_check,
    fourier_inversion_check,
    plancherel_check,
)

CSV_SCHEMAS = {
    "verify": "ffplanes.verify.v1",
    "sweep": "ffplanes.sweep.v1",
    "sharpness": "ffplanes.sharpness.v1",
    "fourier": "ffplanes.fourier.v1",
    "orbit": "ffplanes.orbit.v1",
}

VERIFY_HEADER = (
    "cell,kind,p,k,q,d,seed,n_points,n_planes,maxline,distinct_all,"
    "distinct_nonzero,second_moment,bound_num,bound_den,hypothesis,"
    "lower_bound_ok,half_field_ok,second_moment_ok,intermediate_ok,"
    "energy_identity_ok,reflected_bound_ok,plancherel_ok,row_pass"
)

SWEEP_HEADER = (
    "cell,p,k,q,d,e_size,f_size,trial,seed,threshold,product,hypothesis,"
    "distinct_all,distinct_nonzero,bound_num,bound_den,lower_bound_ok,"
    "half_field_ok,row_pass"
)

SHARPNESS_HEADER = (
    "p,d,q,e_size,f_size,maxline,distinct_all,distinct_nonzero,"
    "nonzero_limit,subfield_closed,rescaling_preserved,row_pass"
)

FOURIER_HEADER = (
    "cell,p,k,q,d,trial,seed,e_size,f_size,plancherel_ok,inversion_ok,"
    "inversion_checked,energy_identity_ok,reflected_bound_ok,row_pass"
)

ORBIT_HEADER = (
    "p,k,q,d,group_order,configs,invariance_checked,invariance_failures,"
    "witness_pairs,witness_failures,mismatch_pairs,mismatch_witnesses,"
    "orbit_count,distinct_all,distinct_nonzero,row_pass"
)


@dataclass(frozen=True)
class SweepConfig:
    fields: tuple = ((5, 1),)
    dims: tuple = (2,)
    e_sizes: tuple | None = None
    f_sizes: tuple | None = None
    trials: int = 1
    seed: int = 0
    budget: int = DEFAULT_ENUM_BUDGET


@dataclass
class RunResult:
    exit_code: int
    csv_text: str
    summary: dict


def _csv(schema_key: str, header: str, rows) -> str:
    lines = [f"# schema: {CSV_SCHEMAS[schema_key]}", header]
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _cells(config: SweepConfig):
    for ci, ((p, k), d) in enumerate(itertools.product(config.fields, config.dims)):
        yield ci, p, k, d


def _random_instance(ctx, d, e_size, f_size, seed):
    e = random_point_set(ctx, d, e_size, derive_seed(seed, 0))
    f = random_plane_set(ctx, d, f_size, derive_seed(seed, 1))
    return e, f


# -- verify --------------------------------------------------------------------

def run_verify(config: SweepConfig, corrupt: bool = False) -> RunResult:
    """Full per-instance verification: distance report, second moment,
    energy identity, norm identity; plus per-cell rigid-motion spot checks.

    ``corrupt`` perturbs the distance histogram before the checks run (test
    mode for the failure path; the run must then exit nonzero).
    """
    rows = []
    notices = []
    orbit_sections = []
    failures = 0
    instances = 0
    worst_sm_slack = None
    worst_bound_gap = None

    for ci, p, k, d in _cells(config):
        ctx = make_field(p, k)
        if config.e_sizes is None or config.f_sizes is None:
            plan = [("full", None)]
        else:
            plan = [
                ("random", (e, f, trial))
                for e in config.e_sizes
                for f in config.f_sizes
                for trial in range(config.trials)
            ]
        for kind, params in plan:
            if kind == "full":
                e_set, f_set = full_configuration(ctx, d)
                seed_i = None
            else:
                e_size, f_size, trial = params
                seed_i = derive_seed(config.seed, ci, e_size, f_size, trial)
                e_set, f_set = _random_instance(ctx, d, e_size, f_size, seed_i)
            if not len(e_set) or not len(f_set):
                notices.append(
                    f"cell {ci}: skipped empty instance (|E|={len(e_set)}, "
                    f"|F|={len(f_set)}): bound undefined"
                )
                continue
            vec = histogram_vector(e_set, f_set)
            if corrupt:
                vec = list(vec)
                vec[0] += 1
            rep = report_from_histogram(e_set, f_set, vec)
            energy = energy_identity_check(e_set, f_set)
            plancherel = plancherel_check(e_set)
            row_pass = rep.passed and energy.passed and plancherel.passed
            instances += 1
            if not row_pass:
                failures += 1
            terms = bound_terms(e_set, f_set)
            sm_rhs = terms.term_uniform + terms.term_energy
            sm_slack = (sm_rhs - rep.second_moment) / sm_rhs
            bound_gap = Fraction(rep.distinct_all) - rep.bound
            if worst_sm_slack is None or sm_slack < worst_sm_slack:
                worst_sm_slack = sm_slack
            if worst_bound_gap is None or bound_gap < worst_bound_gap:
                worst_bound_gap = bound_gap
            rows.append([
                str(ci), kind, str(p), str(k), str(ctx.q), str(d),
                "" if seed_i is None else str(seed_i),
                str(rep.n_points), str(rep.n_planes), str(rep.maxline),
                str(rep.distinct_all), str(rep.distinct_nonzero),
                str(rep.second_moment), str(rep.bound.numerator),
                str(rep.bound.denominator), str(int(rep.hypothesis)),
                str(int(rep.verdicts["lower_bound"])),
                str(int(rep.verdicts["half_field"])),
                str(int(rep.verdicts["second_moment"])),
                str(int(rep.verdicts["energy_intermediate"])),
                str(int(energy.identity.passed)),
                str(int(energy.reflected_bound.passed)),
                str(int(plancherel.passed)),
                str(int(row_pass)),
            ])
        section, section_failures = _orbit_spot_checks(ctx, d, ci, config)
        orbit_sections.append(section)
        failures += section_failures

    summary = {
        "suite": "verify",
        "instances": instances,
        "failures": failures,
        "worst_slack": {
            "second_moment": None if worst_sm_slack is None else _frac(worst_sm_slack),
            "lower_bound_gap": None if worst_bound_gap is None else _frac(worst_bound_gap),
        },
        "skipped": notices,
        "orbit_checks": orbit_sections,
        "prng": PRNG_INFO,
        "config": _config_dict(config),
        "corrupt_mode": corrupt,
    }
    return RunResult(0 if failures == 0 else 1, _csv("verify", VERIFY_HEADER, rows), summary)


def _orbit_spot_checks(ctx, d, ci, config):
    """Per-cell rigid-motion checks, run only within the enumeration budget.

    Exhaustive when small, otherwise a seeded sample; either way the summary
    says what ran.
    """
    candidates = ctx.q ** (d * d)
    if candidates > config.budget:
        return (
            {
                "cell": ci,
                "status": "skipped",
                "reason": f"orthogonal scan needs {candidates} candidates, "
                f"budget {config.budget}",
            },
            0,
        )
    group = orthogonal_group(ctx, d, config.budget)
    e_full, f_full = full_configuration(ctx, d)
    grid = _grid(ctx, d)
    rng = random.Random(derive_seed(config.seed, 7001, ci))

    total = len(group) * len(grid) * len(e_full) * len(f_full)
    inv_failures = 0
    if total <= 200_000:
        combos = itertools.product(group, grid, e_full.points, f_full.planes)
        inv_mode = "exhaustive"
        inv_checked = total
    else:
        combos = (
            (
                group[rng.randrange(len(group))],
                grid[rng.randrange(len(grid))],
                e_full.points[rng.randrange(len(e_full))],
                f_full.planes[rng.randrange(len(f_full))],
            )
            for _ in range(2000)
        )
        inv_mode = "sampled"
        inv_checked = 2000
    for m, tau, x, h in combos:
        moved_x = mat_vec(ctx, m, vec_sub(ctx, x, tau))
        if plane_distance(ctx, x, h) != plane_distance(
            ctx, moved_x, transform_plane(ctx, h, m, tau)
        ):
            inv_failures += 1

    by_distance = {}
    for x in e_full.points:
        for h in f_full.planes:
            by_distance.setdefault(plane_distance(ctx, x, h), []).append((x, h))
    buckets = [b for r, b in sorted(by_distance.items()) if r != 0]
    pair_counts = [len(b) * (len(b) + 1) // 2 for b in buckets]
    total_pairs = sum(pair_counts)
    # each witness search costs ~|group| * q^(d-1) plane comparisons
    sample_cap = max(50, min(500, 500_000 // max(1, len(group) * ctx.q ** (d - 1))))
    if total_pairs <= sample_cap:
        pairs = [
            (b[i], b[j])
            for b in buckets
            for i in range(len(b))
            for j in range(i, len(b))
        ]
        wit_mode = "exhaustive"
    else:
        # draw same-bucket pairs without materializing the pair list
        wit_mode = "sampled"
        pairs = []
        for _ in range(sample_cap):
            bucket = rng.choices(buckets, weights=pair_counts)[0]
            pairs.append((bucket[rng.randrange(len(bucket))],
                          bucket[rng.randrange(len(bucket))]))
    wit_failures = 0
    for (x, h), (x2, h2) in pairs:
        if find_rigid_motion(ctx, x, h, x2, h2, config.budget) is None:
            wit_failures += 1

    section = {
        "cell": ci,
        "status": "ran",
        "group_order": len(group),
        "invariance": {"mode": inv_mode, "checked": inv_checked, "failures": inv_failures},
        "witness": {"mode": wit_mode, "checked": len(pairs), "failures": wit_failures},
    }
    return section, inv_failures + wit_failures


# -- sweep ---------------------------------------------------------------------

def _default_grid(maximum: int) -> tuple:
    return tuple(sorted({max(1, maximum * i // 5) for i in range(1, 6)}))


def run_sweep(config: SweepConfig) -> RunResult:
    """Size grid crossing the |E||F| = q**(d+1) threshold, bound checks only."""
    rows = []
    aggregates = []
    failures = 0
    instances = 0
    for ci, p, k, d in _cells(config):
        ctx = make_field(p, k)
        e_list = config.e_sizes or _default_grid(ctx.q**d)
        f_list = config.f_sizes or _default_grid(len(canonical_plane_pairs(ctx, d)))
        threshold = ctx.q ** (d + 1)
        for e_size, f_size in itertools.product(e_list, f_list):
            distinct_values = []
            bounds = []
            for trial in range(config.trials):
                seed_i = derive_seed(config.seed, ci, e_size, f_size, trial)
                e_set, f_set = _random_instance(ctx, d, e_size, f_size, seed_i)
                rep = distance_report(e_set, f_set)
                bounds.append(rep.bound)
                instances += 1
                row_pass = rep.verdicts["lower_bound"] and rep.verdicts["half_field"]
                if not row_pass:
                    failures += 1
                distinct_values.append(rep.distinct_all)
                rows.append([
                    str(ci), str(p), str(k), str(ctx.q), str(d),
                    str(e_size), str(f_size), str(trial), str(seed_i),
                    str(threshold), str(e_size * f_size),
                    str(int(rep.hypothesis)),
                    str(rep.distinct_all), str(rep.distinct_nonzero),
                    str(rep.bound.numerator), str(rep.bound.denominator),
                    str(int(rep.verdicts["lower_bound"])),
                    str(int(rep.verdicts["half_field"])),
                    str(int(row_pass)),
                ])
            aggregates.append({
                "cell": ci, "q": ctx.q, "d": d,
                "e_size": e_size, "f_size": f_size,
                "hypothesis": e_size * f_size > threshold,
                "min_distinct_all": min(distinct_values),
                "mean_distinct_all": _frac(Fraction(sum(distinct_values), len(distinct_values))),
                "max_bound": _frac(max(bounds)),
            })
    summary = {
        "suite": "sweep",
        "instances": instances,
        "failures": failures,
        "cells": aggregates,
        "prng": PRNG_INFO,
        "config": _config_dict(config),
    }
    return RunResult(0 if failures == 0 else 1, _csv("sweep", SWEEP_HEADER, rows), summary)


# -- sharpness ------------------------------------------------------------------

def run_sharpness(p: int, d: int, budget: int = DEFAULT_ENUM_BUDGET) -> RunResult:
    """Build the subfield configuration and check its distance statistics.

    Asserted: every observed distance lies in the embedded prime subfield,
    at most p - 1 nonzero values occur, and canonical rescaling changed no
    distance.  The observed count is reported, not asserted equal to p - 1.
    """
    cfg = subfield_configuration(p, d, budget)
    ctx = cfg.ctx
    rep = distance_report(cfg.points, cfg.planes)
    closed = all(ctx.in_prime_subfield(r) for r in rep.histogram)
    limit = p - 1
    within_limit = rep.distinct_nonzero <= limit

    rescaling_ok = True
    for (pre_v, pre_t), (post_v, post_t) in cfg.plane_pairs:
        pre_plane = make_plane(ctx, pre_v, pre_t)
        post_plane = make_plane(ctx, post_v, post_t)
        for x in cfg.points:
            if plane_distance(ctx, x, pre_plane) != plane_distance(ctx, x, post_plane):
                rescaling_ok = False
                break
        if not rescaling_ok:
            break

    row_pass = closed and within_limit and rescaling_ok and rep.passed
    row = [
        str(p), str(d), str(ctx.q), str(rep.n_points), str(rep.n_planes),
        str(rep.maxline), str(rep.distinct_all), str(rep.distinct_nonzero),
        str(limit), str(int(closed)), str(int(rescaling_ok)), str(int(row_pass)),
    ]
    summary = {
        "suite": "sharpness",
        "p": p,
        "d": d,
        "q": ctx.q,
        "n_points": rep.n_points,
        "n_planes": rep.n_planes,
        "distinct_nonzero": rep.distinct_nonzero,
        "nonzero_limit": limit,
        "subfield_closed": closed,
        "rescaling_preserved": rescaling_ok,
        "observed_values": sorted(rep.histogram),
        "construction": cfg.construction.to_json_dict(),
        "report": rep.to_json_dict(),
        "failures": 0 if row_pass else 1,
    }
    return RunResult(0 if row_pass else 1, _csv("sharpness", SHARPNESS_HEADER, [row]), summary)


# -- fourier test ------------------------------------------------------------------

INVERSION_FULL_LIMIT = 128  # grids up to this size get every point checked


def run_fourier_test(config: SweepConfig) -> RunResult:
    """Seeded transform checks: norm identity, inversion, energy identity."""
    rows = []
    failures = 0
    instances = 0
    notices = []
    for ci, p, k, d in _cells(config):
        ctx = make_field(p, k)
        n_grid = ctx.q**d
        max_planes = len(canonical_plane_pairs(ctx, d))
        for trial in range(config.trials):
            seed_i = derive_seed(config.seed, ci, trial)
            rng = random.Random(seed_i)
            e_size = rng.randint(0, n_grid)
            f_size = rng.randint(0, max_planes)
            e_set, f_set = _random_instance(ctx, d, e_size, f_size, seed_i)
            plancherel = plancherel_check(e_set)
            if n_grid <= INVERSION_FULL_LIMIT:
                inversion = fourier_inversion_check(e_set)
                checked = n_grid
            else:
                checked = 32
                inversion = fourier_inversion_check(e_set, sample=checked, seed=seed_i)
                if trial == 0:
                    notices.append(
                        f"cell {ci}: inversion spot-checks {checked} of {n_grid} points"
                    )
            energy = energy_identity_check(e_set, f_set)
            row_pass = plancherel.passed and inversion.passed and energy.passed
            instances += 1
            if not row_pass:
                failures += 1
            rows.append([
                str(ci), str(p), str(k), str(ctx.q), str(d), str(trial),
                str(seed_i), str(e_size), str(f_size),
                str(int(plancherel.passed)), str(int(inversion.passed)),
                str(checked), str(int(energy.identity.passed)),
                str(int(energy.reflected_bound.passed)), str(int(row_pass)),
            ])
    summary = {
        "suite": "fourier-test",
        "instances": instances,
        "failures": failures,
        "skipped": notices,
        "prng": PRNG_INFO,
        "config": _config_dict(config),
    }
    return RunResult(0 if failures == 0 else 1, _csv("fourier", FOURIER_HEADER, rows), summary)


# -- orbit check --------------------------------------------------------------------

def run_orbit_check(
    p: int,
    k: int,
    d: int,
    budget: int = DEFAULT_ENUM_BUDGET,
    max_pairs: int = 200_000,
) -> RunResult:
    """Exhaustive rigid-motion oracle on the full configuration.

    Checks, over every (point, canonical plane) configuration: equal nonzero
    distance implies a rigid-motion witness; every rigid motion preserves the
    distance; and reports the exact motion-class count next to the distance
    counts (the two are not asserted equal).
    """
    ctx = make_field(p, k)
    group = orthogonal_group(ctx, d, budget)
    e_full, f_full = full_configuration(ctx, d)
    grid = _grid(ctx, d)

    combos = len(group) * len(grid) * len(e_full) * len(f_full)
    if combos > budget:
        raise BudgetExceeded(combos, budget)
    inv_failures = 0
    inv_checked = 0
    for m in group:
        for tau in grid:
            for x in e_full.points:
                moved_x = mat_vec(ctx, m, vec_sub(ctx, x, tau))
                for h in f_full.planes:
                    inv_checked += 1
                    if plane_distance(ctx, x, h) != plane_distance(
                        ctx, moved_x, transform_plane(ctx, h, m, tau)
                    ):
                        inv_failures += 1

    by_distance = {}
    for x in e_full.points:
        for h in f_full.planes:
            by_distance.setdefault(plane_distance(ctx, x, h), []).append((x, h))
    n_pairs = sum(
        len(b) * (len(b) + 1) // 2 for r, b in by_distance.items() if r != 0
    )
    if n_pairs > max_pairs:
        raise BudgetExceeded(n_pairs, max_pairs)
    wit_failures = 0
    for r, bucket in sorted(by_distance.items()):
        if r == 0:
            continue
        for i in range(len(bucket)):
            x, h = bucket[i]
            for j in range(i, len(bucket)):
                x2, h2 = bucket[j]
                if find_rigid_motion(ctx, x, h, x2, h2, budget) is None:
                    wit_failures += 1

    # distances differ: no motion can exist; spot-check the search agrees
    mismatch_checked = 0
    mismatch_witnesses = 0
    values = sorted(by_distance)
    for r1 in values:
        for r2 in values:
            if r1 < r2 and mismatch_checked < 50:
                mismatch_checked += 1
                c1 = by_distance[r1][0]
                c2 = by_distance[r2][0]
                if find_rigid_motion(ctx, *c1, *c2, budget) is not None:
                    mismatch_witnesses += 1

    orbit_count = config_orbit_count(e_full, f_full, budget)
    rep = distance_report(e_full, f_full)
    row_pass = inv_failures == 0 and wit_failures == 0 and mismatch_witnesses == 0
    row = [
        str(p), str(k), str(ctx.q), str(d), str(len(group)),
        str(len(e_full) * len(f_full)), str(inv_checked), str(inv_failures),
        str(n_pairs), str(wit_failures), str(mismatch_checked),
        str(mismatch_witnesses), str(orbit_count), str(rep.distinct_all),
        str(rep.distinct_nonzero), str(int(row_pass)),
    ]
    summary = {
        "suite": "orbit-check",
        "q": ctx.q,
        "d": d,
        "group_order": len(group),
        "invariance": {"checked": inv_checked, "failures": inv_failures},
        "witness": {"pairs": n_pairs, "failures": wit_failures},
        "mismatch": {"checked": mismatch_checked, "witnesses": mismatch_witnesses},
        "orbit_count": orbit_count,
        "distinct_all": rep.distinct_all,
        "distinct_nonzero": rep.distinct_nonzero,
        "failures": 0 if row_pass else 1,
    }
    return RunResult(0 if row_pass else 1, _csv("orbit", ORBIT_HEADER, [row]), summary)


def _config_dict(config: SweepConfig) -> dict:
    return {
        "fields": [list(fk) for fk in config.fields],
        "dims": list(config.dims),
        "e_sizes": None if config.e_sizes is None else list(config.e_sizes),
        "f_sizes": None if config.f_sizes is None else list(config.f_sizes),
        "trials": config.trials,
        "seed": config.seed,
        "budget": config.budget,
    }
