"""Exception types shared across the package."""


class AmalgamLabError(Exception):
    """Base class for all package-specific errors."""


class GridError(AmalgamLabError):
    """Invalid grid construction or grid mismatch between operands."""


class FieldError(AmalgamLabError):
    """Invalid field specification or a field sampled where it is singular."""


class ExponentError(AmalgamLabError):
    """Exponent outside [1, inf] or an otherwise malformed exponent system."""


class IndexGateViolation(AmalgamLabError):
    """Admissibility gate (1/n) sum 1/s_i <= 1/alpha <= (1/n) sum 1/p_i failed.

    The message names the failing inequality.
    """


class NonTilingRadius(AmalgamLabError):
    """A cube side that does not tile the grid exactly."""


class BlockNormExceeded(AmalgamLabError):
    """A block's discrete amalgam norm exceeds the unit bound."""

    def __init__(self, index: int, norm: float):
        self.index = index
        self.norm = norm
        super().__init__(f"block {index} has norm {norm:.6g} > 1")


class EmptyDecomposition(AmalgamLabError):
    """A block decomposition with no blocks."""


class SuiteError(AmalgamLabError):
    """Unknown suite name or invalid suite configuration."""
