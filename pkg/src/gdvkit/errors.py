"""Exception hierarchy shared across the toolkit.

Three families matter for callers: :class:`ValidationError` covers bad inputs
and degenerate data, :class:`FormatError` covers malformed or truncated files,
and :class:`NonFiniteLoss` signals numeric divergence during training.
"""


class GdvError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(GdvError, ValueError):
    """Input violates a documented precondition or invariant."""


class AllDimensionsConstant(ValidationError):
    """Every coordinate has zero variance, so scaling is undefined."""


class ClassTooSmall(ValidationError):
    """A class has fewer than two points; its mean intra-class distance is undefined."""


class EmptyClass(ValidationError):
    """An inter-class distance was requested against an empty point set."""


class SingleClass(ValidationError):
    """Fewer than two distinct labels are present."""


class LabelMismatch(ValidationError):
    """Layer datasets do not share one common label vector."""


class InvalidSpec(ValidationError):
    """A generator or model configuration violates its invariants."""


class WrongDimension(ValidationError):
    """Input dimensionality does not match the operation's requirement."""


class ShapeMismatch(ValidationError):
    """Array shapes are inconsistent with the model or data."""


class InvalidInput(ValidationError):
    """Data values are outside the operation's admissible range."""


class LayerOutOfRange(ValidationError):
    """Requested layer index exceeds the network depth."""


class NoClassImages(ValidationError):
    """The probe set contains no image of the requested class."""


class TooFewPoints(ValidationError):
    """Not enough points for a projection."""


class DegenerateSpectrum(ValidationError):
    """The double-centered Gram matrix has no positive eigenvalue."""


class NonFiniteLoss(GdvError):
    """Training diverged to a non-finite loss value."""


class FormatError(GdvError):
    """Base class for file format problems."""


class BadMagic(FormatError):
    """File does not start with the expected magic number."""


class UnsupportedVersion(FormatError):
    """Container version is not supported by this reader."""


class TruncatedFile(FormatError):
    """File ends before the header-declared payload."""


class DimensionMismatch(FormatError):
    """Paired files or records disagree on their common dimension."""


class ParseError(FormatError):
    """A text cell could not be parsed; the message carries row/column."""


class NonFiniteValue(FormatError):
    """A parsed numeric cell is NaN or infinite."""


class MissingLabelColumn(FormatError):
    """The CSV header lacks the required trailing 'label' column."""
