"""Exception hierarchy.

Every error the library raises derives from SpectileError, so CLI code can
map library failures to exit code 2/3 without enumerating causes.
"""


class SpectileError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(SpectileError):
    """Points of inconsistent dimension, or dimension outside 1..3."""


class NotFullDimensional(SpectileError):
    """Affine hull of the input has lower dimension than the ambient space."""


class Unbounded(SpectileError):
    """Halfspace intersection has a nonzero recession cone."""


class Empty(SpectileError):
    """Halfspace intersection is empty."""


class SingularMap(SpectileError):
    """Affine map with zero determinant."""


class ZeroDimensionalFace(SpectileError):
    """Measure requested for a 0-dimensional face."""


class NotSymmetric(SpectileError):
    """Operation requires a centrally symmetric polytope (with symmetric facets)."""


class PreconditionFailed(SpectileError):
    """Documented operation precondition does not hold."""


class NotALattice(SpectileError):
    """Group generated by the facet translation vectors has rank below d."""


class NotATiler(SpectileError):
    """Classification requested for a polytope that does not tile."""


class ZeroFrequency(SpectileError):
    """Zero-set membership asked at the origin."""


class NotStandardPosition(SpectileError):
    """Polytope is not origin-symmetric with the facet {1/2} x base."""


class WindowTooSmall(SpectileError):
    """Patch window too small for a meaningful density estimate."""


class ThetaOutOfRange(SpectileError):
    """Prism spectrum offsets must lie in [0, 1)."""


class PrismExcluded(SpectileError):
    """Uniqueness of the spectrum is not a theorem for prisms (or
    parallelograms in the plane); the caller must not rely on it."""


class RankDeficient(SpectileError):
    """Generators do not span the ambient space."""


class UnsupportedDimension(SpectileError):
    """Decision procedures cover dimensions 2 and 3 only."""


class ParseError(SpectileError):
    """Malformed input file or CLI argument."""


class FormatDimensionMismatch(SpectileError):
    """Export format incompatible with the polytope dimension."""
