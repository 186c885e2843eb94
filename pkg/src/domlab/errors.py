"""
Exception hierarchy for domlab

Every error raised on purpose by the library derives from DomlabError, so the
command layer can map it to an exit code without catching unrelated bugs.
"""

from typing import Optional


class DomlabError(Exception):
    """Base class for all domlab errors"""


class GraphSpecError(DomlabError, ValueError):
    """A graph constructor expression could not be parsed"""

    def __init__(self, message: str, spec: str = "", position: Optional[int] = None):
        self.spec = spec
        self.position = position
        if position is not None:
            message = f"{message} (at column {position + 1} of {spec!r})"
        super().__init__(message)


class ParameterRangeError(GraphSpecError):
    """A family parameter is below the minimum its definition requires"""


class EdgeListError(DomlabError, ValueError):
    """Malformed edge-list input"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GraphOperationError(DomlabError, ValueError):
    """An edit or combination would break the graph invariants"""


class VertexSetError(DomlabError, ValueError):
    """A vertex set refers to vertices outside its graph"""


class ResourceCapExceeded(DomlabError):
    """The move graph would exceed the configured node cap"""

    def __init__(self, k: int, cap: int):
        self.k = k
        self.cap = cap
        super().__init__(f"more than {cap} dominating sets of size {k}; raise the node cap")


class OccupiedVertexError(DomlabError, ValueError):
    """An attack was aimed at a vertex that already holds a guard"""


class InvalidAttackError(DomlabError, ValueError):
    """A scripted adversary contains an unusable attack"""


class NoRefutationError(DomlabError):
    """Every configuration in the component is secure dominating"""


class CertificateError(DomlabError, ValueError):
    """A family certificate does not match the move graph it refers to"""


class PartitionError(DomlabError, ValueError):
    """The given vertex classes do not partition the graph"""


class HypothesisViolation(DomlabError, ValueError):
    """Requested invariant triple is not realizable"""


class EngineInvariantError(DomlabError, AssertionError):
    """A proven inequality failed; this is an engine bug"""
