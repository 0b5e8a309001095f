"""Trace semantics of attack trees, computed directly from the tree.

This is the reference the compiler is checked against, so it never looks at a
graph. A trace lists actions in the order they are performed and ends with the
root action:

* a leaf contributes itself;
* OR picks exactly one child (exclusive choice);
* AND runs every child to completion, in any order, one after the other;
* SAND runs every child in the listed order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import ResourceLimitError
from .graph import AttackGraph, enumerate_paths
from .tree import AttackTree, Operator, count_traces, validate_tree

Trace = tuple[str, ...]
TraceSet = frozenset[Trace]

DEFAULT_MAX_TRACES = 10**6


def tree_traces(tree: AttackTree, max_traces: int = DEFAULT_MAX_TRACES) -> TraceSet:
    validate_tree(tree).raise_for_errors()
    expected = count_traces(tree)
    if expected > max_traces:
        raise ResourceLimitError(f"tree has {expected} attack vectors, limit is {max_traces}")
    return frozenset(_traces(tree))


def _traces(tree: AttackTree) -> list[Trace]:
    root = (tree.action,)
    if tree.operator is None:
        return [root]
    per_child = [_traces(child) for child in tree.children]
    if tree.operator is Operator.OR:
        return [t + root for options in per_child for t in options]
    if tree.operator is Operator.SAND:
        orders = [per_child]
    else:
        orders = itertools.permutations(per_child)
    out = []
    for order in orders:
        for parts in itertools.product(*order):
            out.append(sum(parts, ()) + root)
    return out


@dataclass(frozen=True)
class EquivalenceReport:
    missing_in_graph: TraceSet
    extra_in_graph: TraceSet
    tree_count: int
    graph_count: int

    @property
    def equal(self) -> bool:
        return not self.missing_in_graph and not self.extra_in_graph


def check_equivalence(tree: AttackTree, graph: AttackGraph, max_traces: int = DEFAULT_MAX_TRACES) -> EquivalenceReport:
    """Compare the attack vectors of ``tree`` with the success paths of ``graph``."""
    expected = tree_traces(tree, max_traces)
    max_length = sum(1 for _ in tree.nodes()) + 1
    actual = enumerate_paths(graph, max_length, max_paths=max_traces)
    return EquivalenceReport(
        missing_in_graph=expected - actual,
        extra_in_graph=actual - expected,
        tree_count=len(expected),
        graph_count=len(actual),
    )
