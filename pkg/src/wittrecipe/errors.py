"""Exception hierarchy shared by all engine modules.

The CLI maps EngineError to exit code 1 and I/O or JSON parse failures
to exit code 2, so everything semantic must derive from EngineError.
"""


class EngineError(Exception):
    """Base class for all domain, validation and structural failures."""


class StructuralError(EngineError):
    """Shape mismatch: wrong lattice, wrong rank, wrong ring."""


class DomainError(EngineError):
    """Input outside the mathematical domain of an operation."""


class ValidationError(EngineError):
    """Data that parses but violates a required identity or schema."""


class PreconditionError(EngineError):
    """A stated precondition (typically a parity condition) fails."""


class AssumptionError(EngineError):
    """A required validity flag (regularity, hypothesis flag) is missing."""


class ConfigError(ValidationError):
    """Configuration document violates the expected schema."""
