"""Exception and warning types shared across the package."""


class GpBlendError(Exception):
    """Base class for all gpblend errors."""


class DimensionMismatch(GpBlendError):
    """Images/masks/fields that must share dimensions do not."""


class ImageIOError(GpBlendError):
    """File missing, unreadable, or undecodable."""


class UnsupportedFormat(GpBlendError):
    """File is not an 8/16-bit grayscale or RGB PNG."""


class ImageTooSmall(GpBlendError):
    """Downsampling needs at least 2 pixels along each axis."""


class BadTargetDims(GpBlendError):
    """Upsample target must be 2n-1 or 2n along each axis."""


class TooManyLevels(GpBlendError):
    """Requested pyramid depth would shrink the coarsest level below 2 px."""


class WrongKind(GpBlendError):
    """Operation applied to a pyramid of the wrong kind."""


class BetaNonPositive(GpBlendError):
    """Color weight must be > 0; at 0 the DC frequency is undetermined."""


class NoExterior(GpBlendError):
    """Dirichlet solve needs at least one pixel outside the mask."""


class GuideDimensionMismatch(GpBlendError):
    """Guide image channel/shape incompatible with the blend inputs."""


class GuideFileBadDims(GpBlendError):
    """Guide file does not honor the size x size RGB contract."""


class DidNotConvergeWarning(RuntimeWarning):
    """Iterative solve hit the iteration cap; best iterate was returned."""
