"""Exception hierarchy shared by all folia modules."""

from __future__ import annotations


class FoliaError(Exception):
    """Base class for all folia errors."""


class ArgumentError(FoliaError, ValueError):
    """A caller passed an argument outside an operation's domain."""


class InvalidGraph(FoliaError):
    """An operation that needs a valid graph received one with violations."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"invalid foliation graph:\n{report}")


class PreconditionError(FoliaError):
    """A rewrite or query was applied outside its precondition."""


class ModelInconsistency(FoliaError):
    """The graph contradicts a structural consequence of the theory.

    ``rule`` names the violated statement in a stable, greppable form.
    """

    def __init__(self, rule: str, message: str):
        self.rule = rule
        self.message = message
        super().__init__(f"model inconsistency [{rule}]: {message}")


class RewriteBlocked(FoliaError):
    def __init__(self, rule: str, message: str):
        self.rule = rule
        self.message = message
        super().__init__(f"rewrite blocked [{rule}]: {message}")


class TooLarge(FoliaError):
    """Exact isomorphism was requested above the supported size."""


class MeshError(FoliaError):
    """The input mesh is not a closed connected orientable surface."""


class DegenerateSaddle(FoliaError):
    def __init__(self, vertex: int, multiplicity: int):
        self.vertex = vertex
        self.multiplicity = multiplicity
        super().__init__(
            f"degenerate saddle at vertex {vertex} (multiplicity {multiplicity}); "
            "rerun with --split to unfold it"
        )


class ParseError(FoliaError):
    def __init__(self, message: str, line: int = 0, column: int = 0, path: str = "<input>"):
        self.line = line
        self.column = column
        super().__init__(f"{path}:{line}:{column}: {message}")
