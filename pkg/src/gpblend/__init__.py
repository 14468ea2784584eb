"""Gradient-domain image blending with a low-resolution color guide."""

from .blenders import (
    BlendRequest,
    blend,
    effective_scales,
    gp_gan_blend,
    poisson_blend,
    resize_bilinear,
)
from .errors import (
    BadTargetDims,
    BetaNonPositive,
    DidNotConvergeWarning,
    DimensionMismatch,
    GpBlendError,
    GuideDimensionMismatch,
    GuideFileBadDims,
    ImageIOError,
    ImageTooSmall,
    NoExterior,
    TooManyLevels,
    UnsupportedFormat,
    WrongKind,
)
from .gradient_domain import (
    GpParams,
    VectorField,
    composite_field,
    divergence,
    gauss_filter,
    gp_objective,
    gradients,
    solve_gp,
    solve_poisson_dirichlet,
)
from .guide import GuideSpec, resolve_guide
from .image import (
    ImageF,
    MaskImage,
    composite,
    load_image,
    load_mask,
    save_image,
)
from .kernels import BACKEND
from .metrics import color_mse, grad_mse
from .pyramid import (
    Pyramid,
    auto_scale_count,
    build_gaussian,
    build_laplacian,
    downsample,
    multiband_blend,
    reconstruct,
    upsample,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BadTargetDims",
    "BetaNonPositive",
    "BlendRequest",
    "DidNotConvergeWarning",
    "DimensionMismatch",
    "GpBlendError",
    "GpParams",
    "GuideDimensionMismatch",
    "GuideFileBadDims",
    "GuideSpec",
    "ImageF",
    "ImageIOError",
    "ImageTooSmall",
    "MaskImage",
    "NoExterior",
    "Pyramid",
    "TooManyLevels",
    "UnsupportedFormat",
    "VectorField",
    "WrongKind",
    "auto_scale_count",
    "blend",
    "build_gaussian",
    "build_laplacian",
    "color_mse",
    "composite",
    "composite_field",
    "divergence",
    "downsample",
    "effective_scales",
    "gauss_filter",
    "gp_gan_blend",
    "gp_objective",
    "grad_mse",
    "gradients",
    "load_image",
    "load_mask",
    "multiband_blend",
    "poisson_blend",
    "reconstruct",
    "resize_bilinear",
    "resolve_guide",
    "save_image",
    "solve_gp",
    "solve_poisson_dirichlet",
    "upsample",
    "__version__",
]
