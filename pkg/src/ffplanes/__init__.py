"""Exact point-to-hyperplane distance statistics over small finite fields.

Everything is computed in exact arithmetic: field elements are table-driven
codes, character sums live in Z[z] with integer coordinates, and bounds are
rational numbers.  The hot counting loops run in a compiled extension when
available (see ffplanes._core), with a pure-Python fallback selected at
import time.
"""

from ._core import IMPLEMENTATION as KERNEL_IMPLEMENTATION
from .constructions import (
    Construction,
    PRNG_INFO,
    SubfieldConfiguration,
    canonical_plane_pairs,
    derive_seed,
    full_configuration,
    random_plane_set,
    random_point_set,
    subfield_configuration,
)
from .cyclotomic import Cyclotomic
from .distance import (
    BoundTerms,
    DistanceReport,
    DistinctDistances,
    SecondMomentVerdict,
    bound_terms,
    distance_histogram,
    distance_report,
    distinct_distances,
    distinct_lower_bound,
    histogram_vector,
    maxline,
    report_from_histogram,
    second_moment_check,
)
from .errors import (
    BudgetExceeded,
    CompositeP,
    DegeneratePlane,
    DivisionByZero,
    EmptySet,
    FFPlanesError,
    IdentityViolation,
    ReducibleModulus,
    TooLarge,
    ZeroNormal,
    ZeroVector,
)
from .field import FieldCtx, SquareClass, make_field
from .geometry import (
    DEFAULT_ENUM_BUDGET,
    Hyperplane,
    PlaneSet,
    PointSet,
    canonicalize_plane,
    config_orbit_count,
    decompose_direction,
    direction_set,
    dot,
    find_rigid_motion,
    geometric_key,
    identity_matrix,
    is_orthogonal,
    make_plane,
    mat_mul,
    mat_transpose,
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
from .spectral import (
    EnergyVerdicts,
    SpectralTable,
    energy_aligned,
    energy_aligned_direct,
    energy_identity_check,
    energy_reflected,
    energy_reflected_direct,
    fourier_inversion_check,
    fourier_table,
    plancherel_check,
)
from .verdicts import Verdict

__version__ = "0.1.0"
