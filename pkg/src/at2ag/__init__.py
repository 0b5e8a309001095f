"""Compile attack trees (OR / AND / SAND) into state-based attack graphs."""

from .errors import (
    AttackTreeError,
    CycleError,
    DeterminismError,
    GraphError,
    InconsistentLabelsError,
    ParseError,
    PreconditionError,
    ResourceLimitError,
    ValidationError,
)
from .graph import (
    AttackGraph,
    InvariantReport,
    Provenance,
    Transition,
    add_state,
    add_transition,
    check_invariants,
    copy_subgraph,
    enumerate_paths,
    label_states,
    new_seed_graph,
)
from .graph_io import emit_dot, emit_graph_json, load_graph, parse_graph_json, save_graph
from .semantics import EquivalenceReport, TraceSet, check_equivalence, tree_traces
from .transform import TransformStats, expand_and, expand_or, expand_sand, transform
from .tree import (
    AttackTree,
    Operator,
    Radical,
    ValidationReport,
    build_radical_dictionary,
    count_traces,
    kid,
    leaf,
    node,
    rad,
    top,
    validate_tree,
)
from .tree_io import (
    TreeDocument,
    TreeFormat,
    load_tree,
    parse_tree,
    parse_tree_dsl,
    parse_tree_json,
    save_tree,
    serialize_tree,
)

__version__ = "0.1.0"
