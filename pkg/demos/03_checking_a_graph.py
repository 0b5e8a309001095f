"""
Checking a graph against its tree
=================================

`check_invariants` looks at the graph alone: no cycles, one target per
(state, action), no action performed twice on a path, every state on some
successful path, and every path into a state having done the same actions.
`check_equivalence` compares the graph's paths with the attack vectors computed
directly from the tree.
"""

import random

from at2ag import (
    AttackTree,
    Operator,
    check_equivalence,
    check_invariants,
    count_traces,
    transform,
)

rng = random.Random(3)


def random_tree(depth=0, counter=iter(range(10**6))):
    label = f"n{next(counter)}"
    if depth == 3 or (depth and rng.random() < 0.4):
        return AttackTree(label)
    kids = tuple(random_tree(depth + 1) for _ in range(rng.randint(1, 3)))
    return AttackTree(label, rng.choice(list(Operator)), kids)


for _ in range(5):
    tree = random_tree()
    graph, stats = transform(tree)
    flags = check_invariants(graph).flags()
    eq = check_equivalence(tree, graph)
    print(f"{stats.summary()} traces={count_traces(tree)} invariants={all(flags.values())} equal={eq.equal}")

# a broken graph: drop one transition and see what goes missing
tree = random_tree()
graph, _ = transform(tree)
victim = graph.transitions[0]
graph.remove_transition(victim.source, victim.action)
report = check_invariants(graph)
print("after deleting", victim)
for line in report.violations[:5]:
    print("  ", line)
eq = check_equivalence(tree, graph)
print(f"  {len(eq.missing_in_graph)} attack vectors lost")
