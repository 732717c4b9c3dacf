"""Discrete calculus, Dirac operators and Connes-type distances on finite graphs."""

from .graph import (
    GenerationError,
    Graph,
    GraphParseError,
    bfs_distances,
    build_binary_tree,
    build_cycle,
    build_path,
    build_random,
    combinatorial_distance,
    component_count,
    component_labels,
    induced_subgraph,
    parse_graph,
    serialize_graph,
    shortest_path,
)
from .operators import (
    DiracOperator,
    EdgeVector,
    LinearMap,
    adjacency_map,
    apply_adjoint_d,
    apply_d,
    apply_d1,
    apply_d2,
    apply_delta1,
    apply_delta2,
    chirality_map,
    coboundary_map,
    commutator_map,
    conjugation_j,
    cycle_edge_vector,
    d1_map,
    d2_map,
    degree_map,
    delta1_map,
    delta2_map,
    dirac_operator,
    edge_function_map,
    format_coordinate_text,
    function_representation,
    incidence_map,
    is_antisymmetric,
    laplacian_map,
    node_function_map,
    write_coordinate_text,
)
from .spectral import (
    CycleSpaceDims,
    NormBounds,
    PowerIterationResult,
    TruncationReport,
    adjacency_norm_bounds,
    binary_tree_average_degree,
    cycle_space_dims,
    operator_norm,
    power_iteration_norm,
    prefix_average_degrees,
    rational_rank,
    spectral_norm,
    truncation_norm_sequence,
)
from .connes import (
    ComparisonReport,
    ConnesResult,
    SubgraphComparison,
    brute_force_distance,
    commutator_norm,
    comparison_suite,
    connes_distance,
    constraint_profile,
    distance_matrix,
    lattice_closed_form,
    lattice_step_profile,
    random_feasible_point,
    scale_normalization_check,
    tree_distance_closed_form,
)

__version__ = "0.1.0"
