"""
How big does the graph get?
===========================

A single OR over n leaves gives n disjoint legs, 2n + 1 states. A single
AND over n leaves gives the lattice of non-empty subsets, 2**n + 1 states and
n! orderings. A SAND over n leaves is a chain of n + 2 states.
"""

import math

from at2ag import enumerate_paths, node, transform
from at2ag.errors import ResourceLimitError

print(f"{'n':>3} {'OR':>6} {'AND':>6} {'AND paths':>10} {'SAND':>6}")
for n in range(2, 9):
    leaves = [f"c{i}" for i in range(n)]
    or_graph, _ = transform(node("goal", "OR", *leaves))
    and_graph, _ = transform(node("goal", "AND", *leaves))
    sand_graph, _ = transform(node("goal", "SAND", *leaves))
    paths = len(enumerate_paths(and_graph, n + 1))
    assert len(and_graph) == 2**n + 1 and paths == math.factorial(n)
    print(f"{n:>3} {len(or_graph):>6} {len(and_graph):>6} {paths:>10} {len(sand_graph):>6}")

# the lattice size is checked against a state budget before it is built
try:
    transform(node("goal", "AND", *[f"c{i}" for i in range(20)]))
except ResourceLimitError as exc:
    print("20-AND refused:", exc)

# a smaller budget can be passed explicitly
try:
    transform(node("goal", "AND", *"abcdef"), state_budget=50)
except ResourceLimitError as exc:
    print("6-AND with budget 50 refused:", exc)
