"""Exit criteria, one test per criterion.

Each test records a PASS/FAIL line; the lines are printed in the terminal
summary of any pytest run that includes this module.
"""

import math
import sys
import time

import pytest

from at2ag.cli import main as cli_main
from at2ag.errors import ResourceLimitError
from at2ag.graph import check_invariants, enumerate_paths, new_seed_graph
from at2ag.graph_io import emit_dot, emit_graph_json, parse_graph_json
from at2ag.semantics import check_equivalence
from at2ag.transform import expand_and, transform
from at2ag.tree import AttackTree, Radical, leaf, node

from conftest import FIG1_TRACES, FIXTURES, make_fig1
from treegen import tree_suite

SUITE = tree_suite(100)
RESULTS: list[str] = []


def report(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else "")
    RESULTS.append(line)
    assert ok, line


def _compiled_suite():
    return [(tree, transform(tree)[0]) for tree in SUITE]


def test_1_running_example():
    start = time.perf_counter()
    g, _ = transform(make_fig1())
    paths = enumerate_paths(g, 10)
    elapsed = time.perf_counter() - start
    counts = (len(g), len(g.transitions), len(g.initial), len(g.success), len(paths))
    ok = counts == (16, 16, 1, 3, 4) and paths == FIG1_TRACES and elapsed < 1.0
    report(1, "running example golden", ok, f"counts={counts} time={elapsed:.3f}s")


def test_2_closed_forms():
    start = time.perf_counter()
    failures = []

    def expect(what, actual, wanted):
        if actual != wanted:
            failures.append(f"{what}: {actual} != {wanted}")

    expect("leaf states", len(transform(leaf("a"))[0]), 2)
    expect("single child states", len(transform(node("a1", "SAND", "a2"))[0]), 3)
    for n in range(2, 9):
        g, _ = transform(node("r", "OR", *[f"c{i}" for i in range(n)]))
        expect(f"{n}-OR states", len(g), 2 * n + 1)
        expect(f"{n}-OR success", len(g.success), n)
    for n in range(2, 7):
        g, _ = transform(node("r", "AND", *[f"c{i}" for i in range(n)]))
        expect(f"{n}-AND states", len(g), 2**n + 1)
        expect(f"{n}-AND paths", len(enumerate_paths(g, n + 1)), math.factorial(n))
    for n in range(2, 11):
        g, _ = transform(node("r", "SAND", *[f"c{i}" for i in range(n)]))
        expect(f"{n}-SAND states", len(g), n + 2)
        expect(f"{n}-SAND paths", len(enumerate_paths(g, n + 1)), 1)
    elapsed = time.perf_counter() - start
    report(2, "radical closed forms", not failures and elapsed < 5.0, "; ".join(failures) or f"time={elapsed:.3f}s")


def test_3_oracle_equivalence_suite():
    start = time.perf_counter()
    bad = []
    for i, (tree, g) in enumerate(_compiled_suite()):
        eq = check_equivalence(tree, g)
        inv = check_invariants(g)
        if not (eq.equal and all(inv.flags().values())):
            bad.append(i)
    elapsed = time.perf_counter() - start
    ok = len(SUITE) == 100 and not bad and elapsed < 30.0
    report(3, "oracle equivalence on 100 random trees", ok, f"failures={bad} time={elapsed:.2f}s")


def _or_child_label_sets(tree: AttackTree):
    for sub in tree.nodes():
        if sub.operator is not None and sub.operator.value == "OR":
            yield [set(child.labels()) for child in sub.children]


def test_4_monotone_and_exclusive_or():
    violations = 0
    for tree, g in _compiled_suite():
        groups = list(_or_child_label_sets(tree))
        for path in enumerate_paths(g, len(tree.labels()) + 1):
            if len(set(path)) != len(path):
                violations += 1
            on_path = set(path)
            for children in groups:
                if sum(1 for labels in children if labels & on_path) > 1:
                    violations += 1
    report(4, "monotonicity and exclusive OR", violations == 0, f"violations={violations}")


def test_5_determinism():
    mismatches = 0
    for tree, g in _compiled_suite():
        again, _ = transform(tree)
        if emit_dot(g) != emit_dot(again) or emit_graph_json(g) != emit_graph_json(again):
            mismatches += 1
        if parse_graph_json(emit_graph_json(g)) != g:
            mismatches += 1
    report(5, "byte-stable emission and JSON round trip", mismatches == 0, f"mismatches={mismatches}")


def test_6_resource_guard(capsys):
    tree = node("goal", "AND", *[f"c{i}" for i in range(1, 21)])
    start = time.perf_counter()
    with pytest.raises(ResourceLimitError):
        transform(tree)
    lib_time = time.perf_counter() - start

    # the lattice size is checked before any state is allocated
    g = new_seed_graph("goal", state_budget=1000)
    before = len(g)
    try:
        expand_and(g, g.transitions[0], Radical("goal", "AND", tuple(f"c{i}" for i in range(10))))
        untouched = False
    except ResourceLimitError:
        untouched = len(g) == before and len(g.transitions) == 1

    start = time.perf_counter()
    code = cli_main(["transform", str(FIXTURES / "and20.at"), "--quiet"])
    cli_time = time.perf_counter() - start
    capsys.readouterr()
    ok = untouched and code == 4 and lib_time < 1.0 and cli_time < 1.0
    report(6, "resource guard on 20-AND", ok, f"exit={code} time={max(lib_time, cli_time):.3f}s")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
