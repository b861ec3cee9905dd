"""
Exception hierarchy for diagram space computations.

Errors that stem from caller input or configured resource limits also derive
from ValueError so that the CLI reports them uniformly.
"""


class DiagramSpaceError(Exception):
    """Base class for all library errors"""
    pass


class DegreeCapError(DiagramSpaceError, ValueError):
    """An object or morphism lies outside the configured degree cap"""
    pass


class DomainMismatchError(DiagramSpaceError, ValueError):
    """Two morphisms are not composable"""

    def __init__(self, target, source):
        self.target = target
        self.source = source
        super().__init__(f"Cannot compose: codomain {target!r} does not match domain {source!r}")


class DimensionCapError(DiagramSpaceError, ValueError):
    """A simplicial dimension at or beyond dim_cap was requested"""
    pass


class ArityCapError(DiagramSpaceError, ValueError):
    """An operad arity exceeds the configured arity cap"""
    pass


class IterationCapError(DiagramSpaceError, ValueError):
    """A closure computation exceeded its rewrite budget"""
    pass


class FixtureError(DiagramSpaceError, ValueError):
    """Malformed fixture file or record"""
    pass


class UnknownSuiteError(DiagramSpaceError, KeyError):
    """No suite with the requested name"""
    pass


class InvariantViolation(DiagramSpaceError, RuntimeError):
    """A structural invariant failed; indicates a construction bug"""
    pass
