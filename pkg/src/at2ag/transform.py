"""Compile an attack tree into an attack graph.

The graph starts as a single transition labelled with the root action. Every
unexpanded transition whose action is a refined node of the tree is then
replaced by the structure for that node's radical:

* OR: one disjoint leg per child, each leg owning its own copy of whatever
  followed the replaced transition;
* AND: the lattice of non-empty child subsets, so the children may complete in
  any order before the parent action fires;
* SAND: the children chained in their listed order.

Transitions are expanded first-in first-out, which makes state numbering a
deterministic function of the tree.
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass

from .errors import PreconditionError, ResourceLimitError
from .graph import (
    AttackGraph,
    Provenance,
    Transition,
    check_invariants,
    copy_subgraph,
    label_states,
    new_seed_graph,
    reachable_from,
)
from .tree import AttackTree, Operator, Radical, build_radical_dictionary, top

log = logging.getLogger(__name__)

DEFAULT_STATE_BUDGET = 10**6


@dataclass
class TransformStats:
    states_total: int = 0
    transitions_total: int = 0
    success_states: int = 0
    expansions_or: int = 0
    expansions_and: int = 0
    expansions_sand: int = 0

    def summary(self) -> str:
        return (
            f"states={self.states_total} transitions={self.transitions_total} "
            f"success={self.success_states} expansions_or={self.expansions_or} "
            f"expansions_and={self.expansions_and} expansions_sand={self.expansions_sand}"
        )


class InternalInvariantError(AssertionError):
    """The compiler produced a graph violating its own guarantees."""


def _check_edge(graph: AttackGraph, edge: Transition, radical: Radical, *operators: Operator) -> None:
    if radical.operator not in operators and len(radical.children) != 1:
        raise PreconditionError(f"radical {radical.root!r} is {radical.operator.value}, expected {operators[0].value}")
    if edge.action != radical.root:
        raise PreconditionError(f"transition labelled {edge.action!r} cannot host radical {radical.root!r}")
    if edge.expanded or graph.get_transition(edge.source, edge.action) != edge:
        raise PreconditionError(f"transition s{edge.source} --{edge.action}--> s{edge.target} is not pending")


def _reserve(graph: AttackGraph, extra: int) -> None:
    budget = graph.state_budget
    if budget is not None and len(graph) + extra > budget:
        raise ResourceLimitError(
            f"expansion needs {extra} new states on top of {len(graph)}, budget is {budget}"
        )


def expand_or(graph: AttackGraph, edge: Transition, radical: Radical) -> list[Transition]:
    """Replace ``edge`` by one leg per child; returns the new pending transitions.

    The first leg keeps the original continuation, every other leg receives a
    fresh copy of it.
    """
    _check_edge(graph, edge, radical, Operator.OR)
    n = len(radical.children)
    continuation = len(reachable_from(graph, edge.target))
    _reserve(graph, n + (n - 1) * continuation)

    graph.remove_transition(edge.source, edge.action)
    pending = []
    for i, child in enumerate(radical.children):
        q = graph.add_state(Provenance.Q)
        pending.append(graph.add_transition(edge.source, child, q))
        if i == 0:
            entry = edge.target
        else:
            entry, mapping = copy_subgraph(graph, edge.target)
            for new in mapping.values():
                pending.extend(t for t in graph.outgoing(new) if not t.expanded)
        graph.add_transition(q, radical.root, entry, expanded=True)
    return pending


def expand_and(graph: AttackGraph, edge: Transition, radical: Radical) -> list[Transition]:
    """Replace ``edge`` by the subset lattice over the children."""
    _check_edge(graph, edge, radical, Operator.AND)
    children = radical.children
    n = len(children)
    if n == 1:
        return expand_sand(graph, edge, radical)
    # 2**n - 1 must be checked before anything is allocated
    if graph.state_budget is not None and 2**n - 1 + len(graph) > graph.state_budget:
        raise ResourceLimitError(
            f"{n}-way AND needs {2**n - 1} lattice states, budget is {graph.state_budget}"
        )

    graph.remove_transition(edge.source, edge.action)
    lattice: dict[frozenset[int], int] = {}
    for size in range(1, n + 1):
        for subset in itertools.combinations(range(n), size):
            lattice[frozenset(subset)] = graph.add_state(Provenance.Q)

    pending = [graph.add_transition(edge.source, children[i], lattice[frozenset([i])]) for i in range(n)]
    for subset, state in lattice.items():
        for i in range(n):
            if i not in subset:
                pending.append(graph.add_transition(state, children[i], lattice[subset | {i}]))
    graph.add_transition(lattice[frozenset(range(n))], radical.root, edge.target, expanded=True)
    return pending


def expand_sand(graph: AttackGraph, edge: Transition, radical: Radical) -> list[Transition]:
    """Replace ``edge`` by the chain of children in order, then the root action."""
    _check_edge(graph, edge, radical, Operator.SAND)
    _reserve(graph, len(radical.children))
    graph.remove_transition(edge.source, edge.action)
    pending = []
    current = edge.source
    for child in radical.children:
        q = graph.add_state(Provenance.Q)
        pending.append(graph.add_transition(current, child, q))
        current = q
    graph.add_transition(current, radical.root, edge.target, expanded=True)
    return pending


def transform(
    tree: AttackTree,
    state_budget: int | None = DEFAULT_STATE_BUDGET,
    check: bool = True,
) -> tuple[AttackGraph, TransformStats]:
    """Compile ``tree`` into an attack graph.

    Raises ``ValidationError`` for malformed trees and ``ResourceLimitError``
    when the graph would exceed ``state_budget`` states. With ``check`` set,
    the result is verified and an :class:`InternalInvariantError` signals a
    compiler bug.
    """
    radicals = build_radical_dictionary(tree)
    graph = new_seed_graph(top(tree), state_budget)
    stats = TransformStats()

    worklist = deque(t for t in graph.transitions if t.action in radicals)
    while worklist:
        edge = worklist.popleft()
        radical = radicals[edge.action]
        if len(radical.children) == 1 or radical.operator is Operator.SAND:
            new = expand_sand(graph, edge, radical)
            stats.expansions_sand += 1
        elif radical.operator is Operator.OR:
            new = expand_or(graph, edge, radical)
            stats.expansions_or += 1
        else:
            new = expand_and(graph, edge, radical)
            stats.expansions_and += 1
        worklist.extend(t for t in new if t.action in radicals)
        log.debug("expanded %r at s%d, %d states", edge.action, edge.source, len(graph))

    label_states(graph)
    stats.states_total = len(graph)
    stats.transitions_total = len(graph.transitions)
    stats.success_states = len(graph.success)

    if check:
        report = check_invariants(graph)
        if not report.ok:
            raise InternalInvariantError("; ".join(report.violations))
        leftover = [t for t in graph.transitions if t.action in radicals and not t.expanded]
        if leftover:
            raise InternalInvariantError(f"unexpanded transitions remain: {leftover}")
    return graph, stats
