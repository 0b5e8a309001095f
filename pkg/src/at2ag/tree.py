"""Attack trees over OR, AND and SAND refinements, and their radical decomposition.

A tree is a labelled action, optionally refined by an operator over an ordered
list of subtrees. A *radical* is a depth-one slice of a tree: one refined node
together with the labels of its direct children. The compiler in
:mod:`at2ag.transform` consumes trees as a dictionary of radicals keyed by the
label of their root.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator

from .errors import PreconditionError, ValidationError


class Operator(str, enum.Enum):
    OR = "OR"
    AND = "AND"
    SAND = "SAND"


@dataclass(frozen=True)
class AttackTree:
    action: str
    operator: Operator | None = None
    children: tuple[AttackTree, ...] = ()

    def __post_init__(self):
        # accept lists and plain strings for convenience, store canonical forms
        if not isinstance(self.children, tuple):
            object.__setattr__(self, "children", tuple(self.children))
        if self.operator is not None and not isinstance(self.operator, Operator):
            object.__setattr__(self, "operator", Operator(self.operator))

    @property
    def is_leaf(self) -> bool:
        return self.operator is None and not self.children

    def nodes(self) -> Iterator[AttackTree]:
        """Yield every subtree in pre-order, children left to right."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def walk(self) -> Iterator[tuple[tuple[int, ...], AttackTree]]:
        """Like :meth:`nodes` but also yields the child-index path of each node."""
        stack: list[tuple[tuple[int, ...], AttackTree]] = [((), self)]
        while stack:
            path, node = stack.pop()
            yield path, node
            for i in range(len(node.children) - 1, -1, -1):
                stack.append((path + (i,), node.children[i]))

    def labels(self) -> list[str]:
        return [node.action for node in self.nodes()]

    def depth(self) -> int:
        if not self.children:
            return 0
        return 1 + max(child.depth() for child in self.children)

    def __str__(self):
        if self.is_leaf:
            return self.action
        inner = ", ".join(str(c) for c in self.children)
        return f"{self.action} <- {self.operator.value}({inner})"


def leaf(action: str) -> AttackTree:
    return AttackTree(action)


def node(action: str, operator: Operator | str, *children: AttackTree | str) -> AttackTree:
    """Build a refined node; string children are promoted to leaves."""
    kids = tuple(AttackTree(c) if isinstance(c, str) else c for c in children)
    return AttackTree(action, Operator(operator), kids)


@dataclass(frozen=True)
class Radical:
    root: str
    operator: Operator
    children: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "operator", Operator(self.operator))
        if not isinstance(self.children, tuple):
            object.__setattr__(self, "children", tuple(self.children))

    def as_tree(self) -> AttackTree:
        return AttackTree(self.root, self.operator, tuple(AttackTree(c) for c in self.children))


RadicalDictionary = dict  # str -> Radical, insertion order is pre-order of the tree


ERROR = "error"
WARNING = "warning"


@dataclass(frozen=True)
class Issue:
    severity: str
    path: tuple[int, ...]
    message: str

    def location(self) -> str:
        return "root" if not self.path else "root/" + "/".join(str(i) for i in self.path)


@dataclass
class ValidationReport:
    issues: list[Issue] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    @property
    def errors(self) -> list[Issue]:
        return [i for i in self.issues if i.severity == ERROR]

    def raise_for_errors(self) -> None:
        if not self.ok:
            raise ValidationError(self)


def validate_tree(tree: AttackTree) -> ValidationReport:
    report = ValidationReport()
    first_seen: dict[str, tuple[int, ...]] = {}

    def error(path, message):
        report.issues.append(Issue(ERROR, path, message))

    for path, sub in tree.walk():
        label = sub.action
        if not isinstance(label, str) or not label:
            error(path, "empty action label")
        elif "\n" in label or "\r" in label:
            error(path, f"action label {label!r} contains a newline")
        elif label in first_seen:
            where = Issue(ERROR, first_seen[label], "").location()
            error(path, f"duplicate action label {label!r} (first used at {where})")
        else:
            first_seen[label] = path
        if sub.operator is not None and not sub.children:
            error(path, f"{sub.operator.value} refinement without children")
        if sub.operator is None and sub.children:
            error(path, "children given without an operator")
        if sub.operator is not None and len(sub.children) == 1:
            report.issues.append(
                Issue(WARNING, path, f"single-child {sub.operator.value} behaves as a plain chain")
            )
    return report


def top(tree: AttackTree) -> str:
    """Label of the root action."""
    return tree.action


def kid(tree: AttackTree) -> list[str]:
    """Labels of the direct children, in order."""
    if tree.operator is None:
        raise PreconditionError(f"kid() needs a refined node, {tree.action!r} is a leaf")
    return [top(child) for child in tree.children]


def rad(tree: AttackTree) -> Radical | None:
    """Uppermost radical of ``tree``; ``None`` for a leaf."""
    if tree.operator is None:
        return None
    return Radical(top(tree), tree.operator, tuple(kid(tree)))


def build_radical_dictionary(tree: AttackTree) -> dict[str, Radical]:
    validate_tree(tree).raise_for_errors()
    entries: dict[str, Radical] = {}
    for sub in tree.nodes():
        radical = rad(sub)
        if radical is not None:
            entries[radical.root] = radical
    return entries


def count_traces(tree: AttackTree) -> int:
    """Exact number of attack vectors of ``tree`` under exclusive-OR semantics."""
    if tree.operator is None:
        return 1
    counts = [count_traces(child) for child in tree.children]
    if tree.operator is Operator.OR:
        return sum(counts)
    total = 1
    for c in counts:
        total *= c
    if tree.operator is Operator.AND:
        for k in range(2, len(counts) + 1):
            total *= k
    return total
