"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for all toolkit-specific errors."""


class GroundTooLarge(ToolkitError):
    """Ground set exceeds what an operation supports."""


class GroundTooSmall(ToolkitError):
    """Ground set is too small for the requested construction."""


class ArityMismatch(ToolkitError):
    """Family size does not match the pattern's edge count."""


class InvalidPartition(ToolkitError):
    """Partition failed validation; carries the validation report."""

    def __init__(self, report):
        super().__init__(f"invalid partition: {report.summary()}")
        self.report = report


class DomainError(ToolkitError):
    """Arguments outside the domain of a formula or sampler."""


class UnsupportedPattern(ToolkitError):
    """Pattern not handled by the requested operation."""


class TooLargeForExhaustive(ToolkitError):
    """Exhaustive enumeration would be infeasible at this size."""


class DesignConstructionFailed(ToolkitError):
    """A combinatorial design failed its invariants at build time."""
