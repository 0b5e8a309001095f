"""Command line front end.

Exit codes: 0 success, 1 parse or validation error, 2 internal invariant
failure, 3 failed check, 4 resource limit.
"""

from __future__ import annotations

import argparse
import sys

from . import graph_io, tree_io
from .errors import AttackTreeError, GraphError, ParseError, ResourceLimitError, ValidationError
from .graph import check_invariants
from .semantics import DEFAULT_MAX_TRACES, check_equivalence
from .transform import DEFAULT_STATE_BUDGET, InternalInvariantError, transform
from .tree import AttackTree, Operator, count_traces

EXIT_OK, EXIT_PARSE, EXIT_INTERNAL, EXIT_CHECK, EXIT_RESOURCE = 0, 1, 2, 3, 4


def predicted_states(tree: AttackTree) -> int | None:
    """Closed-form state count when ``tree`` is a leaf or a single radical."""
    if tree.operator is None:
        return 2
    if any(child.operator is not None for child in tree.children):
        return None
    n = len(tree.children)
    if n == 1:
        return 3
    if tree.operator is Operator.OR:
        return 2 * n + 1
    if tree.operator is Operator.AND:
        return 2**n + 1
    return n + 2


def _read_tree(args) -> AttackTree:
    fmt = args.format or tree_io.format_for_path(args.input)
    with open(args.input, encoding="utf-8") as fh:
        return tree_io.parse_tree(fh.read(), fmt).tree


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_transform(args) -> int:
    tree = _read_tree(args)
    graph, stats = transform(tree, state_budget=args.state_budget)
    text = graph_io.emit_dot(graph) if args.emit == "dot" else graph_io.emit_graph_json(graph)
    _write(text, args.output)
    # keep stdout clean for the graph when it is the data stream
    stream = sys.stderr if args.output in (None, "-") else sys.stdout
    if not args.quiet:
        print(stats.summary(), file=stream)
    return EXIT_OK


def cmd_check(args) -> int:
    tree = _read_tree(args)
    graph, _ = transform(tree, state_budget=args.state_budget, check=False)
    report = check_invariants(graph)
    for name, ok in report.flags().items():
        print(f"{name}: {'pass' if ok else 'FAIL'}")
    for message in report.violations:
        print(f"  {message}")
    if not report.acyclic:
        return EXIT_CHECK
    eq = check_equivalence(tree, graph, max_traces=args.max_paths)
    if eq.equal:
        print(f"traces={eq.tree_count} match")
    else:
        print(f"traces={eq.tree_count} graph_paths={eq.graph_count} mismatch")
        for trace in sorted(eq.missing_in_graph):
            print("  missing: " + " > ".join(trace))
        for trace in sorted(eq.extra_in_graph):
            print("  extra: " + " > ".join(trace))
    return EXIT_OK if report.ok and eq.equal else EXIT_CHECK


def cmd_stats(args) -> int:
    tree = _read_tree(args)
    nodes = list(tree.nodes())
    internal = [n for n in nodes if n.operator is not None]
    fields = {
        "nodes": len(nodes),
        "internal": len(internal),
        "leaves": len(nodes) - len(internal),
        "depth": tree.depth(),
    }
    for op in Operator:
        fields[op.value.lower()] = sum(1 for n in internal if n.operator is op)
    fields["traces"] = count_traces(tree)
    predicted = predicted_states(tree)
    if predicted is not None:
        fields["predicted_states"] = predicted
    print(" ".join(f"{k}={v}" for k, v in fields.items()))
    return EXIT_OK


def cmd_render(args) -> int:
    with open(args.input, encoding="utf-8") as fh:
        graph = graph_io.parse_graph_json(fh.read())
    _write(graph_io.emit_dot(graph), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="at2ag", description="Compile attack trees into attack graphs.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, tree_input=True):
        p.add_argument("input", help="tree file (.at or .at.json)" if tree_input else "graph file (.ag.json)")
        p.add_argument("--quiet", action="store_true", help="suppress the summary line")
        if tree_input:
            p.add_argument("--format", choices=["json", "dsl"], help="override format detection")
            p.add_argument("--max-paths", type=lambda s: int(float(s)), default=DEFAULT_MAX_TRACES)
            p.add_argument("--state-budget", type=lambda s: int(float(s)), default=DEFAULT_STATE_BUDGET)

    p = sub.add_parser("transform", help="compile a tree into a graph")
    common(p)
    p.add_argument("-o", "--output", help="output file, default standard output")
    p.add_argument("--emit", choices=["json", "dot"], default="json")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("check", help="compile and verify against the trace semantics")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("stats", help="tree statistics")
    common(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("render", help="convert a stored graph to DOT")
    common(p, tree_input=False)
    p.add_argument("-o", "--output", help="output file, default standard output")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"{args.input}:{exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"{args.input}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InternalInvariantError, GraphError) as exc:
        if args.subcommand == "render":
            print(f"{args.input}: {exc}", file=sys.stderr)
            return EXIT_PARSE
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except AttackTreeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
