"""Exact combinatorial verification of nested-torus constructions.

The library mechanizes the circle-level content of genus-one contractible
3-manifold constructions: exact rational interval algebra on a model
circle, middle-thirds stages, piecewise-affine circle shadows of tube
stretches, interlacing numbers with their cover and clasp propagators,
geometric-index bookkeeping, and certificate-producing classification of
defining sequences.
"""

from .circle import (
    BASE_ARC,
    HIGH_THIRD,
    LOW_THIRD,
    OUTER_ARC,
    CantorStage,
    Interval,
    IntervalSet,
    as_fraction,
    c1_c2,
    canonicalize,
    cantor_stage,
    circle_point,
    closed_arc,
    format_rational,
    lift,
    open_arc,
    parse_rational,
    point_arc,
)
from .errors import (
    CompositionError,
    DepthError,
    DomainError,
    GenusOneError,
    InvalidInputError,
    InvalidSequenceError,
    InvalidTubeError,
    NoWitnessError,
    PlanError,
    PropertyViolation,
    TraceRefusedError,
)
from .interlacing import (
    BoundKind,
    InterlaceBound,
    LabeledConfig,
    brute_force_interlace_points,
    cover_interlace,
    interlace_intervals,
    interlace_points,
    labeled_config,
    mcmillan_bound,
    neighborhood_witness,
    whitehead_bound,
)
from .manifolds import (
    Certificate,
    DefiningSequence,
    IndexLedger,
    Link,
    LinkKind,
    Verdict,
    bing,
    classify_double3,
    distinguish_by_prime,
    divergence_trace,
    gabai,
    gabai_index_certificate,
    index_between,
    link_index,
    mcmillan,
    parity_check,
    replay_certificate,
    trace_certificate,
    verify_certificate,
    whitehead,
)
from .plmap import MapPiece, PLCircleMap, compose, invert
from .tubes import (
    InductionReport,
    SetupReport,
    Side,
    StepReport,
    Tube,
    TubeParams,
    TubePlan,
    build_induction,
    build_tube_plan,
    default_assignment,
    find_verified_plan,
    tube_parameters,
    verify_index_shift,
    verify_setup,
)

__version__ = "0.1.0"
