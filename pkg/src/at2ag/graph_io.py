"""DOT and JSON renderings of attack graphs.

Both emitters are deterministic: states are written in ascending id order and
transitions in insertion order, so the same graph always yields the same bytes.
"""

from __future__ import annotations

import json

from .errors import CycleError, GraphError, ParseError
from .graph import AttackGraph, Provenance, find_cycle


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(graph: AttackGraph, name: str = "attack_graph") -> str:
    lines = [f"digraph {_dot_quote(name)} {{", "  rankdir=TB;", '  node [shape=circle];']
    for s in graph.states:
        attrs = [f"label={_dot_quote(f's{s}')}"]
        if s in graph.initial:
            attrs.append("peripheries=2")
        if s in graph.success:
            attrs.append("shape=doublecircle")
        if s in graph.labels:
            attrs.append(f"tooltip={_dot_quote(', '.join(sorted(graph.labels[s])))}")
        lines.append(f"  s{s} [{', '.join(attrs)}];")
    for t in graph.transitions:
        lines.append(f"  s{t.source} -> s{t.target} [label={_dot_quote(t.action)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_graph_json(graph: AttackGraph) -> str:
    doc = {
        "states": [
            {
                "id": s,
                "provenance": graph.provenance[s].value,
                "label_set": sorted(graph.labels[s]) if s in graph.labels else None,
            }
            for s in graph.states
        ],
        "transitions": [
            {"source": t.source, "action": t.action, "target": t.target, "expanded": t.expanded}
            for t in graph.transitions
        ],
        "initial": sorted(graph.initial),
        "success": sorted(graph.success),
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _schema(message: str) -> ParseError:
    return ParseError(1, 1, message)


def _require(obj, key, kind, where):
    if not isinstance(obj, dict) or key not in obj:
        raise _schema(f"{where}: missing key {key!r}")
    value = obj[key]
    # bool is an int subclass; never accept it where an id is expected
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise _schema(f"{where}: {key!r} has the wrong type")
    return value


def parse_graph_json(text: str) -> AttackGraph:
    """Rebuild a graph from :func:`emit_graph_json` output, validating it.

    Malformed JSON and schema problems raise :class:`ParseError`; a document
    describing an ill-formed graph raises a :class:`GraphError` subclass.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.colno, exc.msg) from None
    if not isinstance(doc, dict):
        raise _schema("top level must be an object")
    for key in ("states", "transitions", "initial", "success"):
        _require(doc, key, list, "graph")

    graph = AttackGraph()
    labels = {}
    for i, entry in enumerate(sorted(doc["states"], key=lambda e: e.get("id", -1) if isinstance(e, dict) else -1)):
        where = f"states[{i}]"
        sid = _require(entry, "id", int, where)
        prov = _require(entry, "provenance", str, where)
        if prov not in ("P", "Q"):
            raise _schema(f"{where}: provenance must be 'P' or 'Q'")
        if sid in graph or sid < 0:
            raise GraphError(f"duplicate or negative state id {sid}")
        graph.add_state(Provenance(prov), state_id=sid)
        label_set = entry.get("label_set")
        if label_set is not None:
            if not isinstance(label_set, list) or not all(isinstance(a, str) for a in label_set):
                raise _schema(f"{where}: 'label_set' must be a list of strings or null")
            labels[sid] = frozenset(label_set)

    for i, entry in enumerate(doc["transitions"]):
        where = f"transitions[{i}]"
        graph.add_transition(
            _require(entry, "source", int, where),
            _require(entry, "action", str, where),
            _require(entry, "target", int, where),
            _require(entry, "expanded", bool, where),
        )

    for key, target in (("initial", graph.initial), ("success", graph.success)):
        for sid in doc[key]:
            if isinstance(sid, bool) or not isinstance(sid, int):
                raise _schema(f"{key}: state ids must be integers")
            if sid not in graph:
                raise GraphError(f"{key} state s{sid} is not a state of the graph")
            target.add(sid)
    if len(graph) > 1 and graph.initial & graph.success:
        raise GraphError("a state is both initial and success")
    cycle = find_cycle(graph)
    if cycle is not None:
        raise CycleError(cycle)
    graph.labels = labels
    return graph


def save_graph(graph: AttackGraph, path, emit: str = "json") -> None:
    text = emit_dot(graph) if emit == "dot" else emit_graph_json(graph)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def load_graph(path) -> AttackGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph_json(fh.read())
