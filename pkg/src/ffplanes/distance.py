"""Distance-value statistics between a point set and a plane set.

The central object is the histogram nu(r) = number of (point, plane) pairs
at distance r.  From it: the distinct-value counts, the exact second-moment
inequality, and the rational lower bound

    |E|**2 |F|**2 / (2 |E|**2 |F|**2 / q  +  2 q**(d-1) |E| |F| * maxline)

where maxline is the largest number of offsets any single normal direction
carries.  Two counts are reported and never conflated: distinct_all counts
distinct distance values including zero (what the second-moment chain
bounds), distinct_nonzero counts nonzero values only (a lower bound for the
number of rigid-motion classes, since equal nonzero distance forces a motion
witness).  All comparisons are exact; rationals use fractions.Fraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import _core as kernels
from .errors import EmptySet
from .geometry import PlaneSet, PointSet
from .spectral import energy_aligned, energy_reflected


def histogram_vector(e: PointSet, f: PlaneSet) -> list:
    """nu as a dense length-q list indexed by the distance value's code."""
    ctx = e.ctx
    if e.ctx != f.ctx or e.d != f.d:
        raise ValueError("point set and plane set live in different spaces")
    if not len(e) or not len(f):
        return [0] * ctx.q
    hist = kernels.distance_hist(
        kernels.dot_products(e.array, f.normal_array, ctx.add_table, ctx.mul_table),
        f.normal_index,
        f.offsets,
        f.scales,
        ctx.sub_table,
        ctx.mul_table,
        ctx.sq_table,
        ctx.q,
    )
    return [int(c) for c in hist]


def distance_histogram(e: PointSet, f: PlaneSet) -> dict:
    """nu as a map from distance value to pair count (zero counts omitted)."""
    vec = histogram_vector(e, f)
    return {r: c for r, c in enumerate(vec) if c}


@dataclass(frozen=True)
class DistinctDistances:
    nonzero: frozenset
    has_zero: bool


def distinct_distances(e: PointSet, f: PlaneSet) -> DistinctDistances:
    """Support of the histogram, split into nonzero values and a zero flag."""
    vec = histogram_vector(e, f)
    return DistinctDistances(
        frozenset(r for r, c in enumerate(vec) if c and r != 0),
        bool(vec[0]),
    )


def maxline(f: PlaneSet) -> int:
    """Largest number of offsets carried by one normal; at most q."""
    if not len(f):
        return 0
    return int(f.normal_multiplicity.max())


@dataclass(frozen=True)
class BoundTerms:
    """Denominator pieces of the lower bound, all nonnegative exact rationals."""

    ef_sq: int
    term_uniform: Fraction
    term_energy: int
    maxline: int


def bound_terms(e: PointSet, f: PlaneSet) -> BoundTerms:
    ne, nf = len(e), len(f)
    if not ne or not nf:
        raise EmptySet("the lower bound is undefined for empty sets")
    ctx = e.ctx
    ml = maxline(f)
    return BoundTerms(
        ef_sq=ne**2 * nf**2,
        term_uniform=Fraction(2 * ne**2 * nf**2, ctx.q),
        term_energy=2 * ctx.q ** (e.d - 1) * ne * nf * ml,
        maxline=ml,
    )


def distinct_lower_bound(e: PointSet, f: PlaneSet) -> Fraction:
    """Exact rational lower bound for the distinct distance-value count."""
    terms = bound_terms(e, f)
    return Fraction(terms.ef_sq) / (terms.term_uniform + terms.term_energy)


@dataclass(frozen=True)
class SecondMomentVerdict:
    """Both sides of the second-moment inequality, computed exactly.

    ``intermediate`` is |F| * (aligned + reflected), the energy step that
    sits between the second moment and the closed-form right side.
    """

    second_moment: int
    intermediate: int
    rhs: Fraction
    passed: bool
    intermediate_passed: bool
    slack: Fraction

    def to_json_dict(self) -> dict:
        return {
            "second_moment": self.second_moment,
            "intermediate": self.intermediate,
            "rhs": str(self.rhs),
            "slack": str(self.slack),
            "pass": self.passed and self.intermediate_passed,
        }


def second_moment_check(e: PointSet, f: PlaneSet) -> SecondMomentVerdict:
    """sum_r nu(r)**2 <= |F|(aligned + reflected) <= the closed-form bound."""
    vec = histogram_vector(e, f)
    sm = sum(c * c for c in vec)
    intermediate = len(f) * (energy_aligned(e, f) + energy_reflected(e, f))
    terms = bound_terms(e, f)
    rhs = terms.term_uniform + terms.term_energy
    return SecondMomentVerdict(
        second_moment=sm,
        intermediate=intermediate,
        rhs=rhs,
        passed=sm <= rhs,
        intermediate_passed=sm <= intermediate,
        slack=rhs - sm,
    )


@dataclass(frozen=True)
class DistanceReport:
    """Full statistics plus pass/fail verdicts for one (E, F) instance."""

    p: int
    k: int
    q: int
    d: int
    n_points: int
    n_planes: int
    maxline: int
    histogram: dict
    distinct_all: int
    distinct_nonzero: int
    second_moment: int
    intermediate: int
    bound: Fraction
    hypothesis: bool
    verdicts: dict

    CSV_FIELDS = (
        "q", "d", "n_points", "n_planes", "maxline", "distinct_all",
        "distinct_nonzero", "second_moment", "bound_num", "bound_den",
        "hypothesis", "pass",
    )

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def csv_row(self) -> list:
        return [
            str(self.q), str(self.d), str(self.n_points), str(self.n_planes),
            str(self.maxline), str(self.distinct_all), str(self.distinct_nonzero),
            str(self.second_moment), str(self.bound.numerator),
            str(self.bound.denominator), str(int(self.hypothesis)),
            str(int(self.passed)),
        ]

    def to_json_dict(self) -> dict:
        return {
            "field": {"p": self.p, "k": self.k, "q": self.q},
            "d": self.d,
            "n_points": self.n_points,
            "n_planes": self.n_planes,
            "maxline": self.maxline,
            "histogram": sorted(self.histogram.items()),
            "distinct_all": self.distinct_all,
            "distinct_nonzero": self.distinct_nonzero,
            "second_moment": self.second_moment,
            "intermediate": self.intermediate,
            "bound": str(self.bound),
            "hypothesis": self.hypothesis,
            "verdicts": dict(sorted(self.verdicts.items())),
            "pass": self.passed,
        }


def report_from_histogram(e: PointSet, f: PlaneSet, vec) -> DistanceReport:
    """Assemble the report from a (possibly externally supplied) histogram.

    The histogram is trusted as given so that failure paths can be exercised;
    distance_report computes it honestly.
    """
    ctx = e.ctx
    ne, nf = len(e), len(f)
    terms = bound_terms(e, f)
    ml = terms.maxline
    sm = sum(c * c for c in vec)
    distinct_all = sum(1 for c in vec if c)
    distinct_nonzero = sum(1 for c in vec[1:] if c)
    hypothesis = ne * nf > ctx.q ** (e.d + 1)
    intermediate = nf * (energy_aligned(e, f) + energy_reflected(e, f))
    rhs = terms.term_uniform + terms.term_energy
    bound = Fraction(terms.ef_sq) / rhs
    verdicts = {
        "total_mass": sum(vec) == ne * nf,
        "cauchy_schwarz": ne**2 * nf**2 <= sm * distinct_all,
        "second_moment": sm <= rhs,
        "energy_intermediate": sm <= intermediate,
        "lower_bound": distinct_all >= bound,
        "half_field": (not hypothesis) or 2 * distinct_all >= ctx.q,
        "maxline_at_most_q": ml <= ctx.q,
    }
    return DistanceReport(
        p=ctx.p, k=ctx.k, q=ctx.q, d=e.d,
        n_points=ne, n_planes=nf, maxline=ml,
        histogram={r: c for r, c in enumerate(vec) if c},
        distinct_all=distinct_all,
        distinct_nonzero=distinct_nonzero,
        second_moment=sm,
        intermediate=intermediate,
        bound=bound,
        hypothesis=hypothesis,
        verdicts=verdicts,
    )


def distance_report(e: PointSet, f: PlaneSet) -> DistanceReport:
    """Compute the histogram and assemble the full verdict report."""
    return report_from_histogram(e, f, histogram_vector(e, f))
