"""Reading and writing attack trees.

Two formats are supported. JSON is the interchange format::

    {"action": "r", "operator": "SAND", "children": [{"action": "a"}, {"action": "b"}]}

The DSL is a compact notation for hand-written trees::

    "Befriend Administrator" <- SAND("Get Phone Number", "Invite to Social Function")

Labels are double-quoted strings or bare ``[A-Za-z0-9_]+`` words. Whitespace
and newlines outside quotes are ignored.
"""

from __future__ import annotations

import enum
import json
import json.decoder
import json.scanner
import re
from dataclasses import dataclass

from .errors import ParseError
from .tree import AttackTree, Operator, validate_tree


class TreeFormat(str, enum.Enum):
    JSON = "json"
    DSL = "dsl"


@dataclass(frozen=True)
class TreeDocument:
    tree: AttackTree
    source_format: TreeFormat


def _line_col(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


# -- JSON ------------------------------------------------------------------


class _PosDict(dict):
    """A decoded JSON object remembering the offset of its opening brace."""

    pos = 0


class _PositionDecoder(json.JSONDecoder):
    def __init__(self):
        super().__init__()
        plain = self.parse_object

        def parse_object(s_and_end, *args):
            _, end = s_and_end
            obj, new_end = plain(s_and_end, *args)
            obj = _PosDict(obj)
            obj.pos = end - 1
            return obj, new_end

        self.parse_object = parse_object
        # the C scanner ignores parse_object overrides
        self.scan_once = json.scanner.py_make_scanner(self)


_OPERATORS = {op.value: op for op in Operator}


def parse_tree_json(text: str) -> TreeDocument:
    try:
        data = _PositionDecoder().decode(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.colno, exc.msg) from None

    def fail(obj, message):
        pos = getattr(obj, "pos", 0)
        raise ParseError(*_line_col(text, pos), message)

    def build(obj) -> AttackTree:
        if not isinstance(obj, dict):
            fail(obj, f"expected a tree object, got {type(obj).__name__}")
        unknown = set(obj) - {"action", "operator", "children"}
        if unknown:
            fail(obj, f"unexpected key {sorted(unknown)[0]!r}")
        action = obj.get("action")
        if not isinstance(action, str):
            fail(obj, "'action' must be a string")
        if "operator" not in obj and "children" not in obj:
            return AttackTree(action)
        if "operator" not in obj:
            fail(obj, f"node {action!r} has children but no operator")
        if "children" not in obj:
            fail(obj, f"node {action!r} has an operator but no children")
        op = obj["operator"]
        if op not in _OPERATORS:
            fail(obj, f"unknown operator {op!r}")
        children = obj["children"]
        if not isinstance(children, list):
            fail(obj, "'children' must be a list")
        return AttackTree(action, _OPERATORS[op], tuple(build(c) for c in children))

    tree = build(data)
    validate_tree(tree).raise_for_errors()
    return TreeDocument(tree, TreeFormat.JSON)


def _tree_to_obj(tree: AttackTree) -> dict:
    if tree.operator is None:
        return {"action": tree.action}
    return {
        "action": tree.action,
        "operator": tree.operator.value,
        "children": [_tree_to_obj(c) for c in tree.children],
    }


# -- DSL -------------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<word>[A-Za-z0-9_]+)
  | (?P<arrow><-)
  | (?P<punct>[(),])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str
    value: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos] == '"':
                raise ParseError(*_line_col(text, pos), "unterminated string")
            raise ParseError(*_line_col(text, pos), f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        if kind == "string":
            raw = m.group()[1:-1]
            tokens.append(_Token("label", re.sub(r"\\(.)", r"\1", raw), pos))
        elif kind == "word":
            tokens.append(_Token("label", m.group(), pos))
        elif kind != "ws":
            tokens.append(_Token(m.group(), m.group(), pos))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _DslParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def error(self, token: _Token, message: str):
        return ParseError(*_line_col(self.text, token.pos), message)

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def expect(self, kind: str, what: str) -> _Token:
        token = self.tokens[self.i]
        if token.kind != kind:
            found = "end of input" if token.kind == "end" else repr(token.value)
            raise self.error(token, f"expected {what}, found {found}")
        self.i += 1
        return token

    def tree(self) -> AttackTree:
        label = self.expect("label", "an action label").value
        if self.peek().kind != "<-":
            return AttackTree(label)
        self.i += 1
        op_token = self.expect("label", "an operator")
        if op_token.value not in _OPERATORS:
            raise self.error(op_token, f"unknown operator {op_token.value!r}")
        self.expect("(", "'('")
        children = [self.tree()]
        while self.peek().kind == ",":
            self.i += 1
            children.append(self.tree())
        self.expect(")", "',' or ')'")
        return AttackTree(label, _OPERATORS[op_token.value], tuple(children))

    def document(self) -> AttackTree:
        tree = self.tree()
        self.expect("end", "end of input")
        return tree


def parse_tree_dsl(text: str) -> TreeDocument:
    tree = _DslParser(text).document()
    validate_tree(tree).raise_for_errors()
    return TreeDocument(tree, TreeFormat.DSL)


def _quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _to_dsl(tree: AttackTree) -> str:
    if tree.operator is None:
        return _quote(tree.action)
    inner = ", ".join(_to_dsl(c) for c in tree.children)
    return f"{_quote(tree.action)} <- {tree.operator.value}({inner})"


# -- front doors -----------------------------------------------------------


def serialize_tree(tree: AttackTree, format: TreeFormat | str = TreeFormat.JSON) -> str:
    """Render ``tree``; the result has no trailing newline."""
    format = TreeFormat(format)
    if format is TreeFormat.JSON:
        return json.dumps(_tree_to_obj(tree), ensure_ascii=False, separators=(",", ":"))
    return _to_dsl(tree)


def parse_tree(text: str, format: TreeFormat | str) -> TreeDocument:
    if TreeFormat(format) is TreeFormat.JSON:
        return parse_tree_json(text)
    return parse_tree_dsl(text)


def format_for_path(path: str) -> TreeFormat:
    return TreeFormat.JSON if str(path).endswith(".json") else TreeFormat.DSL


def load_tree(path) -> TreeDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_tree(fh.read(), format_for_path(path))


def save_tree(tree: AttackTree, path, format: TreeFormat | str | None = None) -> None:
    format = format_for_path(path) if format is None else format
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_tree(tree, format) + "\n")
