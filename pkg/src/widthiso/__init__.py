"""Isomorphism testing and canonization for graphs of bounded tree distance
width and bounded treewidth, built on decomposition-based recursive orders
and validated at small scale against a brute-force oracle."""

from .errors import (
    DisconnectedGraphError,
    EmptySetError,
    FormatError,
    GraphError,
    InvalidBipartitionError,
    InvalidDecompositionError,
    InvalidParamsError,
    InvalidQueryError,
    InvalidVertexError,
    NoAdmissibleMappingError,
    RootHasNoParentError,
    SizeMismatchError,
    WidthExceededError,
)
from .graph import (
    Bipartite,
    Graph,
    connected_components,
    distance,
    induced_bipartite,
    induced_subgraph,
    is_connected,
    neighbors_of_set,
    reachable_avoiding,
    set_distance,
    vertex_set,
)
from .tdd import (
    DecompositionRecord,
    TreeDistanceDecomposition,
    build_minimal_tdd,
    decomposition_records,
    first_child,
    next_sibling,
    parent_bag,
    tree_distance_width,
    validate_tdd,
)
from .augtree import (
    AugmentedTree,
    SubtreeHandle,
    build_augmented_tree,
    subtree_graph,
    subtree_size,
)
from .isoorder import (
    BagOrdering,
    CanonicalForm,
    OrderResult,
    ThetaSet,
    canon_tdw,
    canonical_map,
    compare_augmented,
    full_theta,
    iso_tdw,
    restrict_theta,
)
from .treewidth import (
    TreeDecomposition,
    compute_tree_decomposition,
    is_valid_child_bag,
    iso_one_decomp,
    iso_respecting_both,
    iso_tw,
    lex_subtree_order,
    validate_tree_decomposition,
)
from .oracle import (
    apply_permutation,
    brute_force_iso,
    compose_permutations,
    enumerate_connected_graphs,
    identity_permutation,
    inverse_permutation,
    is_isomorphism,
    is_permutation,
)
from .generate import InstanceBundle, generate_partial_ktree, random_relabel

__version__ = "0.1.0"

__all__ = [
    "AugmentedTree",
    "BagOrdering",
    "Bipartite",
    "CanonicalForm",
    "DecompositionRecord",
    "DisconnectedGraphError",
    "EmptySetError",
    "FormatError",
    "Graph",
    "GraphError",
    "InstanceBundle",
    "InvalidBipartitionError",
    "InvalidDecompositionError",
    "InvalidParamsError",
    "InvalidQueryError",
    "InvalidVertexError",
    "NoAdmissibleMappingError",
    "OrderResult",
    "RootHasNoParentError",
    "SizeMismatchError",
    "SubtreeHandle",
    "ThetaSet",
    "TreeDecomposition",
    "TreeDistanceDecomposition",
    "WidthExceededError",
    "apply_permutation",
    "brute_force_iso",
    "build_augmented_tree",
    "build_minimal_tdd",
    "canon_tdw",
    "canonical_map",
    "compare_augmented",
    "compose_permutations",
    "compute_tree_decomposition",
    "connected_components",
    "decomposition_records",
    "distance",
    "enumerate_connected_graphs",
    "first_child",
    "full_theta",
    "generate_partial_ktree",
    "identity_permutation",
    "induced_bipartite",
    "induced_subgraph",
    "inverse_permutation",
    "is_connected",
    "is_isomorphism",
    "is_permutation",
    "is_valid_child_bag",
    "iso_one_decomp",
    "iso_respecting_both",
    "iso_tdw",
    "iso_tw",
    "lex_subtree_order",
    "neighbors_of_set",
    "next_sibling",
    "parent_bag",
    "random_relabel",
    "reachable_avoiding",
    "restrict_theta",
    "set_distance",
    "subtree_graph",
    "subtree_size",
    "tree_distance_width",
    "validate_tdd",
    "validate_tree_decomposition",
    "vertex_set",
]
