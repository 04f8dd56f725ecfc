"""Exception types and the infeasibility result."""
from __future__ import annotations

from dataclasses import dataclass, field


class EquicolorError(Exception):
    """Base class for all package errors."""


class NotOuterplanar(EquicolorError):
    pass


class NotMaximal(EquicolorError):
    pass


class MissingEmbedding(EquicolorError):
    pass


class NotAForest(EquicolorError):
    pass


class TooLarge(EquicolorError):
    pass


class TooSmall(EquicolorError):
    pass


class NoConfigAvoidingE(EquicolorError):
    pass


class BudgetExceeded(EquicolorError):
    pass


class Unsolved(EquicolorError):
    pass


class InternalAssertionFailed(EquicolorError):
    """A step that should always succeed did not; carries the failing step name."""

    def __init__(self, step: str, detail: str = ""):
        super().__init__(f"{step}: {detail}" if detail else step)
        self.step = step
        self.detail = detail


class HypothesisViolated(EquicolorError):
    """Some vertex v has alpha_v(G) < floor(n/s); `witness` is the best set found."""

    def __init__(self, vertex: int, needed: int, found: int, witness=()):
        super().__init__(
            f"vertex {vertex}: largest independent set through it has {found} < {needed}"
        )
        self.vertex = vertex
        self.needed = needed
        self.found = found
        self.witness = tuple(witness)


class ParseError(EquicolorError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Infeasible:
    """Proof-carrying negative answer: no equitable colouring exists."""

    s: int
    reason: str
    nodes_explored: int = 0
    witnesses: tuple = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return False


class WitnessInvalid(EquicolorError):
    """Supplied witness sets are not disjoint independent sets of the right sizes."""
