"""Exception types shared across the package."""


class DvcvError(Exception):
    """Base class for all package errors."""


class OutOfRange(DvcvError, ValueError):
    """Occupation or index exceeds a mode cutoff."""


class CutoffTooSmall(DvcvError):
    """Truncation would discard more norm than the tail tolerance allows."""


class InvalidModes(DvcvError, ValueError):
    pass


class LayoutMismatch(DvcvError, ValueError):
    pass


class DegenerateState(DvcvError):
    """A superposition vanishes identically, or a normalization is singular."""


class InfiniteCoefficient(DvcvError):
    """A coefficient diverges at a removable singularity of the closed forms."""


class InvalidDensity(DvcvError, ValueError):
    pass


class NoSignChange(DvcvError):
    """The residual does not change sign anywhere on the bracket."""


class InvalidConfig(DvcvError, ValueError):
    pass
