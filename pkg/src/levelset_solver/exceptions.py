from core.exceptions import (
    DomainError,
    FlowError,
)


class DegenerateGradient(FlowError):
    """|grad phi| vanishes at the queried point, so the normal and the curvature are undefined there."""


class CFLViolation(DomainError):
    """The requested time step exceeds the explicit scheme's stable step."""


class EmptySurface(FlowError):
    """No cell lies inside the surface: the sphere has vanished."""


class DomainEscape(FlowError):
    """The zero level set came too close to the grid boundary to be trusted."""


class SnapshotFormatError(DomainError):
    """A binary field snapshot is truncated or its header does not match its payload."""
