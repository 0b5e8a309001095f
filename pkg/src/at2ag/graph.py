"""State-based attack graphs: states, a deterministic labelled transition
function, initial and success states.

States are integer ids handed out in increasing order. Each state records
whether it existed before the expansion that touched it (``P``) or was created
by it (``Q``). After construction, :func:`label_states` attaches to every
state the set of actions performed on any path leading to it.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field

from .errors import CycleError, DeterminismError, GraphError, InconsistentLabelsError, ResourceLimitError


class Provenance(str, enum.Enum):
    P = "P"
    Q = "Q"


@dataclass(frozen=True)
class Transition:
    source: int
    action: str
    target: int
    expanded: bool = False


class AttackGraph:
    def __init__(self, state_budget: int | None = None):
        self.state_budget = state_budget
        self.provenance: dict[int, Provenance] = {}
        self.initial: set[int] = set()
        self.success: set[int] = set()
        self.labels: dict[int, frozenset[str]] = {}
        self._next_id = 0
        self._edges: dict[tuple[int, str], Transition] = {}
        self._out: dict[int, dict[str, Transition]] = {}

    @property
    def states(self) -> list[int]:
        return sorted(self.provenance)

    @property
    def transitions(self) -> list[Transition]:
        """All transitions in insertion order."""
        return list(self._edges.values())

    def __len__(self):
        return len(self.provenance)

    def __contains__(self, state):
        return state in self.provenance

    def add_state(self, provenance: Provenance = Provenance.Q, state_id: int | None = None) -> int:
        if self.state_budget is not None and len(self.provenance) >= self.state_budget:
            raise ResourceLimitError(f"state budget of {self.state_budget} exhausted")
        if state_id is None:
            state_id = self._next_id
        elif state_id < self._next_id:
            raise GraphError(f"state id {state_id} already allocated")
        self._next_id = state_id + 1
        self.provenance[state_id] = Provenance(provenance)
        self._out[state_id] = {}
        return state_id

    def add_transition(self, source: int, action: str, target: int, expanded: bool = False) -> Transition:
        for s in (source, target):
            if s not in self.provenance:
                raise GraphError(f"unknown state s{s}")
        if (source, action) in self._edges:
            existing = self._edges[source, action]
            raise DeterminismError(
                f"s{source} already has a {action!r} transition (to s{existing.target})"
            )
        t = Transition(source, action, target, expanded)
        self._edges[source, action] = t
        self._out[source][action] = t
        return t

    def remove_transition(self, source: int, action: str) -> Transition:
        t = self._edges.pop((source, action))
        del self._out[source][action]
        return t

    def get_transition(self, source: int, action: str) -> Transition | None:
        return self._edges.get((source, action))

    def outgoing(self, state: int) -> list[Transition]:
        return list(self._out[state].values())

    def predecessors(self) -> dict[int, list[Transition]]:
        incoming: dict[int, list[Transition]] = {s: [] for s in self.provenance}
        for t in self._edges.values():
            incoming[t.target].append(t)
        return incoming

    def __eq__(self, other):
        if not isinstance(other, AttackGraph):
            return NotImplemented
        return (
            self.provenance == other.provenance
            and set(self._edges.values()) == set(other._edges.values())
            and self.initial == other.initial
            and self.success == other.success
            and self.labels == other.labels
        )

    def __repr__(self):
        return (
            f"AttackGraph(states={len(self.provenance)}, transitions={len(self._edges)}, "
            f"initial={sorted(self.initial)}, success={sorted(self.success)})"
        )


def add_state(graph: AttackGraph, provenance: Provenance = Provenance.Q) -> int:
    return graph.add_state(provenance)


def add_transition(graph: AttackGraph, source: int, action: str, target: int, expanded: bool = False) -> Transition:
    return graph.add_transition(source, action, target, expanded)


def new_seed_graph(root_action: str, state_budget: int | None = None) -> AttackGraph:
    """Two-state graph ``s0 --root_action--> ss``; the transition is left unexpanded."""
    graph = AttackGraph(state_budget)
    s0 = graph.add_state(Provenance.P)
    ss = graph.add_state(Provenance.P)
    graph.initial.add(s0)
    graph.success.add(ss)
    graph.add_transition(s0, root_action, ss)
    return graph


def reachable_from(graph: AttackGraph, entry: int) -> list[int]:
    """States reachable from ``entry`` (inclusive), breadth-first, edges in insertion order."""
    seen = {entry}
    order = [entry]
    queue = deque([entry])
    while queue:
        s = queue.popleft()
        for t in graph.outgoing(s):
            if t.target not in seen:
                seen.add(t.target)
                order.append(t.target)
                queue.append(t.target)
    return order


def copy_subgraph(graph: AttackGraph, entry: int) -> tuple[int, dict[int, int]]:
    """Duplicate everything reachable from ``entry`` into fresh ``Q`` states.

    Transitions keep their action and expansion flag; copies of success states
    are success states. Returns the copy of ``entry`` and the old-to-new map.
    """
    if entry not in graph:
        raise GraphError(f"unknown state s{entry}")
    region = reachable_from(graph, entry)
    mapping = {old: graph.add_state(Provenance.Q) for old in region}
    for old in region:
        for t in graph.outgoing(old):
            graph.add_transition(mapping[old], t.action, mapping[t.target], t.expanded)
        if old in graph.success:
            graph.success.add(mapping[old])
    return mapping[entry], mapping


def find_cycle(graph: AttackGraph) -> list[int] | None:
    """Return the states of one directed cycle (first state repeated last), or None."""
    WHITE, GREY, BLACK = 0, 1, 2
    colour = dict.fromkeys(graph.provenance, WHITE)
    for root in graph.states:
        if colour[root] != WHITE:
            continue
        colour[root] = GREY
        stack = [(root, iter(graph.outgoing(root)))]
        while stack:
            state, it = stack[-1]
            t = next(it, None)
            if t is None:
                colour[state] = BLACK
                stack.pop()
                continue
            if colour[t.target] == GREY:
                on_stack = [s for s, _ in stack]
                return on_stack[on_stack.index(t.target):] + [t.target]
            if colour[t.target] == WHITE:
                colour[t.target] = GREY
                stack.append((t.target, iter(graph.outgoing(t.target))))
    return None


def topological_order(graph: AttackGraph) -> list[int]:
    cycle = find_cycle(graph)
    if cycle is not None:
        raise CycleError(cycle)
    indegree = dict.fromkeys(graph.provenance, 0)
    for t in graph.transitions:
        indegree[t.target] += 1
    queue = deque(s for s in graph.states if indegree[s] == 0)
    order = []
    while queue:
        s = queue.popleft()
        order.append(s)
        for t in graph.outgoing(s):
            indegree[t.target] -= 1
            if indegree[t.target] == 0:
                queue.append(t.target)
    return order


def enumerate_paths(graph: AttackGraph, max_length: int, max_paths: int | None = None) -> frozenset[tuple[str, ...]]:
    """Action sequences of all paths from an initial state to a success state.

    Raises :class:`ResourceLimitError` if a path grows beyond ``max_length``
    transitions or more than ``max_paths`` distinct traces turn up.
    """
    if max_length < 1:
        raise ValueError("max_length must be positive")
    cycle = find_cycle(graph)
    if cycle is not None:
        raise CycleError(cycle)
    traces: set[tuple[str, ...]] = set()
    for s0 in sorted(graph.initial):
        stack: list[tuple[int, tuple[str, ...]]] = [(s0, ())]
        while stack:
            state, trace = stack.pop()
            if state in graph.success and trace:
                traces.add(trace)
                if max_paths is not None and len(traces) > max_paths:
                    raise ResourceLimitError(f"more than {max_paths} paths")
            for t in reversed(graph.outgoing(state)):
                if len(trace) >= max_length:
                    raise ResourceLimitError(f"path longer than {max_length} transitions at s{state}")
                stack.append((t.target, trace + (t.action,)))
    return frozenset(traces)


def _path_label_sets(graph: AttackGraph, order: list[int]):
    """For each reachable state, the distinct action sets of paths reaching it.

    Also returns (state, action) pairs where some path would perform an
    action it has already performed.
    """
    reach: dict[int, set[frozenset[str]]] = {s: {frozenset()} for s in graph.initial}
    repeats: list[tuple[int, str]] = []
    for s in order:
        if s not in reach:
            continue
        for t in graph.outgoing(s):
            into = reach.setdefault(t.target, set())
            for labels in reach[s]:
                if t.action in labels:
                    repeats.append((s, t.action))
                into.add(labels | {t.action})
    return reach, repeats


def label_states(graph: AttackGraph) -> None:
    """Attach to each reachable state the set of actions performed to reach it."""
    order = topological_order(graph)
    reach, _ = _path_label_sets(graph, order)
    for s in order:
        if s in reach and len(reach[s]) > 1:
            raise InconsistentLabelsError(s, reach[s])
    graph.labels = {s: next(iter(reach[s])) for s in order if s in reach}


@dataclass
class InvariantReport:
    acyclic: bool = True
    deterministic: bool = True
    monotone: bool = True
    all_states_reachable: bool = True
    all_states_coreachable: bool = True
    path_set_consistent: bool = True
    violations: list[str] = field(default_factory=list)

    FLAGS = (
        "acyclic",
        "deterministic",
        "monotone",
        "all_states_reachable",
        "all_states_coreachable",
        "path_set_consistent",
    )

    @property
    def ok(self) -> bool:
        return all(getattr(self, name) for name in self.FLAGS)

    def flags(self) -> dict[str, bool]:
        return {name: getattr(self, name) for name in self.FLAGS}


def check_invariants(graph: AttackGraph) -> InvariantReport:
    report = InvariantReport()

    def fail(flag, message):
        setattr(report, flag, False)
        report.violations.append(f"{flag}: {message}")

    # (source, action) uniqueness is enforced by the edge index; re-derive it
    # from the raw list so a corrupted graph is still caught
    seen: dict[tuple[int, str], Transition] = {}
    for t in graph.transitions:
        if t.source not in graph or t.target not in graph:
            fail("deterministic", f"transition s{t.source} --{t.action}--> s{t.target} has a dangling endpoint")
        key = (t.source, t.action)
        if key in seen:
            fail("deterministic", f"s{t.source} has two {t.action!r} transitions")
        seen[key] = t

    forward = set()
    for s0 in graph.initial:
        forward.update(reachable_from(graph, s0))
    for s in graph.states:
        if s not in forward:
            fail("all_states_reachable", f"s{s} is not reachable from an initial state")

    incoming = graph.predecessors()
    backward = set(graph.success)
    queue = deque(graph.success)
    while queue:
        s = queue.popleft()
        for t in incoming[s]:
            if t.source not in backward:
                backward.add(t.source)
                queue.append(t.source)
    for s in graph.states:
        if s not in backward:
            fail("all_states_coreachable", f"s{s} cannot reach a success state")

    cycle = find_cycle(graph)
    if cycle is not None:
        witness = " -> ".join(f"s{s}" for s in cycle)
        fail("acyclic", f"cycle {witness}")
        if cycle[0] in forward:
            fail("monotone", f"reachable cycle {witness} repeats its actions")
        fail("path_set_consistent", "undefined on a cyclic graph")
        return report

    reach, repeats = _path_label_sets(graph, topological_order(graph))
    for state, action in sorted(set(repeats)):
        fail("monotone", f"a path through s{state} performs {action!r} twice")
    for s in graph.states:
        if len(reach.get(s, ())) > 1:
            fail("path_set_consistent", str(InconsistentLabelsError(s, reach[s])))
    return report
