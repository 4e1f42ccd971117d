"""Realize finite set families as subtrees of a tree or intervals of a line."""
from .checkers import (
    ChordlessCycle,
    HellyViolation,
    MeetingChainReport,
    check_chordal,
    check_helly_bruteforce,
    check_helly_triples,
    meeting_chain_depth,
)
from .graphs import (
    DecompositionViolation,
    PathDecomposition,
    SubtreeRepresentation,
    line_decomposition_from_cliques,
    maximal_cliques_chordal,
    pathwidth_bruteforce,
    subtree_representation,
    verify_path_decomposition,
)
from .interval import (
    FComponents,
    ObstructionTriple,
    brute_force_order,
    f_connected_components,
    find_obstruction_triple,
    is_f_connected,
    realize_interval_order,
)
from .model import (
    FormatError,
    Graph,
    GroundSet,
    Ordering,
    SetFamily,
    Tree,
    ValidationReport,
    induced_component_count,
    intersection_graph,
    parse_family,
    parse_graph,
    serialize_family,
    serialize_graph,
    validate_subtree_representation,
)
from .tree_realizer import (
    DisconnectedMeeting,
    Fleet,
    extend_fleet_maximally,
    find_disconnected_meeting,
    realize_tree,
    spanning_tree_of_edge_ships,
)

__version__ = "0.1.0"

__all__ = [
    "ChordlessCycle",
    "DecompositionViolation",
    "DisconnectedMeeting",
    "FComponents",
    "Fleet",
    "FormatError",
    "Graph",
    "GroundSet",
    "HellyViolation",
    "MeetingChainReport",
    "ObstructionTriple",
    "Ordering",
    "PathDecomposition",
    "SetFamily",
    "SubtreeRepresentation",
    "Tree",
    "ValidationReport",
    "brute_force_order",
    "check_chordal",
    "check_helly_bruteforce",
    "check_helly_triples",
    "extend_fleet_maximally",
    "f_connected_components",
    "find_disconnected_meeting",
    "find_obstruction_triple",
    "induced_component_count",
    "intersection_graph",
    "is_f_connected",
    "line_decomposition_from_cliques",
    "maximal_cliques_chordal",
    "meeting_chain_depth",
    "parse_family",
    "parse_graph",
    "pathwidth_bruteforce",
    "realize_interval_order",
    "realize_tree",
    "serialize_family",
    "serialize_graph",
    "spanning_tree_of_edge_ships",
    "subtree_representation",
    "validate_subtree_representation",
    "verify_path_decomposition",
]
