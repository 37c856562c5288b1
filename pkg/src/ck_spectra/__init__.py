"""Gauge-invariant ideal lattices and spectra of graph algebras under Condition (K)."""

from .errors import (
    CkSpectraError,
    ConditionKRequired,
    DuplicateLabel,
    InvalidPath,
    NotAMaximalTail,
    NotSaturatedHereditary,
    ParseError,
    SizeLimitExceeded,
    UndeclaredVertex,
    UnknownVertex,
    VerificationFailure,
)
from .gcg import emit_gcg, parse_graph
from .generators import (
    GraphFixture,
    PXModel,
    ea_graph,
    phi,
    px_closure,
    px_companion,
    px_model,
    random_condition_k_graph,
    random_graph,
    running_example,
)
from .graph_core import (
    DEFAULT_ENUMERATION_LIMIT,
    OMEGA,
    Bundle,
    Check,
    CycleClass,
    Graph,
    Mult,
    VertexClassification,
    classify_vertices,
    condition_K,
    condition_L,
    has_csp,
    is_downward_directed,
    is_omega,
    mult_sum,
    reaches,
    simple_cycle_class,
    upward_set,
)
from .ideals import (
    AdmissiblePair,
    IdealClass,
    IdealKind,
    QuotientGraph,
    admissible_pair,
    admissible_pairs,
    breaking_vertex_discrepancies,
    breaking_vertices,
    classify_ideal,
    classify_via_quotient,
    ideal_leq,
    is_hereditary,
    is_saturated,
    meet,
    quotient_graph,
    saturated_hereditary_sets,
)
from .render import emit_dot, emit_json, graph_payload, quotient_payload
from .tails import (
    BoundaryPath,
    MtReport,
    clusters,
    finite_return_vertices,
    is_union_of_maximal_tails,
    maximal_tails,
    mt_report,
    realize_as_tail,
    tail_of_boundary,
)
from .topology import (
    ClusterPoint,
    FRPoint,
    SpecPoint,
    SpecSpace,
    check_kuratowski,
    graph_closure,
    h_map,
    ideal_closure,
    naive_graph_closure,
    prim_points,
    prim_space,
    prim_spec_density_check,
    separation_report,
    spec_points,
    spec_space,
    v_of,
    verify_homeomorphism,
)

__version__ = "0.1.0"
