"""Exception and warning types shared across the trainer."""


class GuideGanError(Exception):
    """Base class for all guidegan errors."""


class MisalignedPair(GuideGanError):
    """Raised when the two images of a training pair disagree in shape."""


class EmptyDataset(GuideGanError):
    """Raised when a dataset directory yields no usable training pairs."""


class BadCheckpoint(GuideGanError):
    """Raised when a checkpoint directory is missing, incomplete, or corrupt."""


class OptimizerFailed(UserWarning):
    """Warned when no latent search start converged; the best iterate is still returned."""
