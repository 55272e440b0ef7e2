"""Attractor and decomposition analysis for finite discrete dynamical systems.

The toolkit models a finite system as a state set with an update map,
derives its state-space digraph, organizes the digraph's cycles into a
truncated cycle set with rotation and repetition operators, recognizes
which abstract cycle sets arise from digraphs, and decomposes coupled
systems along cuts of their wiring diagrams with verified equivariant
bijections between attractor sets.
"""

from ._kernels import KERNEL, WalkCapExceeded
from .attractor import (
    CycleSetPresentation,
    TruncatedCycleSet,
    attractor_presentation,
    attractor_truncated,
    closed_walk_count,
    enumerate_n_cycles,
    nondeg_orbit_counts,
    orbit_count,
    realize_presentation,
    system_cycles,
)
from .cycleset import (
    Ancestor,
    AncestorAmbiguity,
    CycleSetValidationError,
    PropertyViolation,
    ZnSet,
    adjoint_left,
    adjoint_right,
    builtin_examples,
    check_property_a,
    check_property_b,
    cycle_set_coproduct,
    ev,
    nondegenerate_ancestor,
    realize_truncated,
    recognize,
    representable,
    validate,
    zn_isomorphic,
    zn_isomorphism,
)
from .dds import (
    DdsError,
    DdsMorphism,
    FiniteDds,
    Trajectory,
    check_morphism,
    coproduct,
    cyclic_dds,
    is_isomorphism,
    make_dds,
    make_morphism,
    orbit_components,
    product,
    pullback,
    step,
    trajectory,
)
from .digraph import (
    CycleMap,
    Digraph,
    DigraphError,
    GraphMap,
    check_graph_map,
    compose_cycle_maps,
    cycle_graph,
    cycle_hom_set,
    dds_from_functional,
    digraphs_isomorphic,
    graph_coproduct,
    graph_product,
    is_functional,
    make_digraph,
    state_space,
)
from .ingest import (
    AnalysisReport,
    ParseError,
    emit_cycleset,
    emit_digraph,
    emit_network,
    parse_cycleset,
    parse_digraph,
    parse_network,
    report_json,
    to_dot,
)
from .semidirect import (
    DecompositionReport,
    SemiDirectSpec,
    decompose_attractors,
    driven_system,
    make_semidirect_spec,
    representative_invariance,
    semidirect,
    verify_pullback,
)
from .wiring import (
    Cut,
    ExtractedDecomposition,
    InvalidCutError,
    ProductFunction,
    WiringError,
    dedge,
    depends_on,
    enumerate_cuts,
    extract,
    independent_lift,
    make_product_function,
    verify_semidirect_projection,
    wiring_diagram,
)

__version__ = "0.1.0"
