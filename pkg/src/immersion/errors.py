"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class ImmersionError(Exception):
    """Base class for all errors raised by this package."""


class UnknownId(ImmersionError, LookupError):
    """A vertex or arc id does not exist in the graph."""


class LoopArc(ImmersionError, ValueError):
    """Attempt to add an arc whose tail equals its head."""


class OutOfRange(ImmersionError, ValueError):
    """A numeric parameter is outside its admissible range."""


class FormatError(ImmersionError, ValueError):
    """Malformed digraph or certificate text."""


class HostMismatch(ImmersionError, ValueError):
    """Two certificates cannot be composed: the inner host is not the outer pattern."""


class ComposeOverlap(ImmersionError, RuntimeError):
    """Composition produced paths sharing an arc (inputs did not verify)."""


class SameEndpoints(ImmersionError, ValueError):
    """Flow query with source equal to target."""


class PreconditionViolated(ImmersionError, ValueError):
    """Input does not satisfy the solver's degree or multiplicity hypotheses."""


class NotSimple(PreconditionViolated):
    """Input digraph has parallel arcs where a simple digraph is required."""


class InsufficientOutdegree(PreconditionViolated):
    def __init__(self, found: int, required: int, vertex: int | None = None):
        self.found = found
        self.required = required
        self.vertex = vertex
        where = f" at vertex {vertex}" if vertex is not None else ""
        super().__init__(
            f"minimum outdegree {found}{where} does not exceed the required "
            f"bound {required}"
        )


class SearchFailed(ImmersionError, RuntimeError):
    """No immersion was found (only possible when hypotheses are waived)."""


class ResourceExceeded(ImmersionError, RuntimeError):
    """Exhaustive search hit one of its configured limits."""


class UnknownFixture(ImmersionError, KeyError):
    """Requested reduction fixture name is not shipped."""


class InternalInvariantBroken(ImmersionError, AssertionError):
    """A solver invariant failed.

    The instance carries whatever state was available when the check failed
    so that a diagnostic dump can be written (see ``solver.write_dump``).
    """

    def __init__(self, message: str, *, graph=None, certificate=None, state=None):
        super().__init__(message)
        self.graph = graph
        self.certificate = certificate
        self.state = state


class LiftCollision(InternalInvariantBroken):
    """Two expanded shortcut arcs claim the same host arc."""
