"""
Compiling the root-access attack tree
=====================================

The attack tree below asks how an attacker gets root access: either by
exploiting a buffer overflow (two ways to do that) or by exploiting an
administrator, which needs an invented pretext *and* a befriended
administrator, the latter being a fixed sequence of two steps.
"""

from pathlib import Path

from at2ag import check_equivalence, emit_dot, enumerate_paths, load_tree, transform

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

tree = load_tree(FIXTURES / "fig1.at").tree
print(tree)

# compile; the stats count states, transitions and expansions per operator
graph, stats = transform(tree)
print(stats.summary())

# every attack vector of the tree is one initial-to-success path of the graph
for trace in sorted(enumerate_paths(graph, max_length=10)):
    print("  " + " > ".join(trace))

print("matches tree semantics:", check_equivalence(tree, graph).equal)

# each state carries the set of actions already performed when it is reached
for state in graph.states:
    print(f"s{state}: {sorted(graph.labels[state])}")

# DOT for graphviz: `dot -Tsvg running_example.dot -o running_example.svg`
print(emit_dot(graph)[:300], "...")
