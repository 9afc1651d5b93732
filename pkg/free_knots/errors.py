from typing import Optional


class FreeKnotError(Exception):
    """Base class for all errors raised by the free_knots package."""
    pass


class GaussCodeError(FreeKnotError, ValueError):
    """Raised when a Gauss code cannot be parsed into a chord diagram."""

    def __init__(self, message: str, label: Optional[str] = None):
        super().__init__(message)
        self.label = label


class ChordIndexError(FreeKnotError, IndexError):
    pass


class PairingError(FreeKnotError, ValueError):
    """Raised for blocks that do not form a pairing of the diagram's chords.

    `kind` is one of: partition, self_pair, correspondence, unknown_label, malformed, chord_count.
    """

    def __init__(self, message: str, kind: str = "partition"):
        super().__init__(message)
        self.kind = kind


class BudgetExhaustedError(FreeKnotError):
    """The search visited more nodes than the configured budget allows."""

    def __init__(self, nodes: int, budget: int):
        super().__init__(f"Search budget of {budget} nodes exhausted after {nodes} nodes")
        self.nodes = nodes
        self.budget = budget


class OracleBoundError(FreeKnotError):
    def __init__(self, n: int, bound: int):
        super().__init__(f"Oracle refuses diagrams with {n} chords (bound is {bound})")
        self.n = n
        self.bound = bound


class MoveError(FreeKnotError, ValueError):
    """Raised when a Reidemeister move or splice is applied at an invalid site."""
    pass


class ScriptReplayError(MoveError):
    pass
