"""Exception hierarchy shared by the parsers, the graph model and the compiler."""

from __future__ import annotations


class AttackTreeError(Exception):
    """Base class for every error raised by this package."""


class PreconditionError(AttackTreeError, ValueError):
    """An operation was called on an argument outside its domain."""


class ValidationError(AttackTreeError):
    """A tree failed structural validation; ``report`` carries the findings."""

    def __init__(self, report):
        self.report = report
        lines = [f"{issue.location()}: {issue.message}" for issue in report.errors]
        super().__init__("invalid attack tree: " + "; ".join(lines))


class ParseError(AttackTreeError):
    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"{line}:{column}: {message}")

    def __eq__(self, other):
        if not isinstance(other, ParseError):
            return NotImplemented
        return (self.line, self.column, self.message) == (other.line, other.column, other.message)

    def __hash__(self):
        return hash((self.line, self.column, self.message))


class GraphError(AttackTreeError):
    """An attack graph invariant does not hold."""


class DeterminismError(GraphError):
    """Two transitions share a (source, action) pair."""


class CycleError(GraphError):
    def __init__(self, cycle: list[int]):
        self.cycle = cycle
        super().__init__("cycle through states " + " -> ".join(f"s{s}" for s in cycle))


class InconsistentLabelsError(GraphError):
    def __init__(self, state: int, label_sets):
        self.state = state
        self.label_sets = label_sets
        rendered = " vs ".join(sorted("{" + ", ".join(sorted(ls)) + "}" for ls in label_sets))
        super().__init__(f"paths into s{state} carry different action sets: {rendered}")


class ResourceLimitError(AttackTreeError):
    """A configured state, trace or path budget would be exceeded."""
