"""
Trees and graphs on disk
========================

Trees are read from JSON (`.at.json`) or from a small DSL (`.at`), graphs are
written as JSON (`.ag.json`) or DOT. The same operations are available from
the command line::

    at2ag stats fixtures/fig1.at.json
    at2ag transform fixtures/fig1.at --emit=dot -o fig1.dot
    at2ag check fixtures/fig1.at.json
    at2ag render fixtures/fig2.ag.json -o fig2.dot
"""

from at2ag import emit_graph_json, parse_graph_json, parse_tree_dsl, serialize_tree, transform

doc = parse_tree_dsl(
    """
    "Steal data" <- OR(
        "Phish credentials" <- SAND(craft_mail, send_mail),
        "Exploit server" <- AND(scan, exploit)
    )
    """
)
print(serialize_tree(doc.tree, "json"))
print(serialize_tree(doc.tree, "dsl"))

graph, _ = transform(doc.tree)
text = emit_graph_json(graph)
assert parse_graph_json(text) == graph
print(text[:400], "...")
