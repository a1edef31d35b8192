"""Evidential preference fusion with Condorcet-cycle-free collective graphs."""

__version__ = "0.1.0"

from .evidence import (
    Frame,
    FrameMismatchError,
    JaccardMatrix,
    MassFunction,
    TotalConflictError,
    bel,
    betp,
    betp_atoms,
    betp_singleton,
    conjunctive_combine,
    conjunctive_combine_many,
    jaccard_matrix,
    jousselme_distance,
    mean_combine,
    pl,
    simple_support,
    vacuous,
)
from .fusion import (
    DEFAULT_TEMPLATE,
    INCOMPARABILITY_MASS,
    PREFERENCE_FRAME,
    DefaultTemplate,
    FusedPair,
    PairAssessment,
    PreferenceProfile,
    RelationKind,
    decide,
    fuse_profile,
    resolve_degrees,
    single_agent_mass,
    strategy_a,
    strategy_b,
)
from .graph import (
    PreferenceGraph,
    RelationEdge,
    build_graph,
    check_dag2,
    find_paradox_components,
    incremental_dag2,
    naive_dag2,
    to_dot,
    to_edge_csv,
)
from .synth import (
    StructureFamily,
    StructureSpec,
    circles_for_nodes,
    generate_degree_sweep,
    generate_structure,
    node_count,
    structure_relations,
)

__all__ = [name for name in dir() if not name.startswith("_")]
