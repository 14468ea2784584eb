"""End-to-end blending strategies behind one request interface.

Four methods share the BlendRequest surface: the coarse-to-fine
gradient-plus-color pipeline ("gp-gan"), the masked Dirichlet solve
("poisson"), classical multi-band blending ("multiband"), and plain
copy-paste. All are deterministic and clamp the final image to [0,1].
"""

from __future__ import annotations

from dataclasses import dataclass, field

import cv2
import numpy as np

from .errors import DimensionMismatch, GuideDimensionMismatch
from .gradient_domain import (
    GpParams,
    composite_field,
    divergence,
    solve_gp,
    solve_poisson_dirichlet,
)
from .guide import GuideSpec, resolve_guide
from .image import ImageF, MaskImage, check_same_dims, composite
from .pyramid import auto_scale_count, build_gaussian, multiband_blend, upsample

METHODS = ("gp-gan", "poisson", "multiband", "copy-paste")


@dataclass(frozen=True)
class BlendRequest:
    src: ImageF
    dst: ImageF
    mask: MaskImage
    method: str = "gp-gan"
    guide: GuideSpec = field(default_factory=lambda: GuideSpec("downsample"))
    params: GpParams = field(default_factory=GpParams)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        check_same_dims(self.src, self.dst, self.mask)
        if self.src.channels != 3 or self.dst.channels != 3:
            raise DimensionMismatch("blending requires 3-channel images")


def effective_scales(
    width: int, height: int, params: GpParams, coarse_max: int = 64
) -> int:
    """Scale count actually used: explicit override or the auto rule."""
    if params.scales != "auto":
        return params.scales
    return auto_scale_count(width, height, coarse_max)


def resize_bilinear(img: ImageF, target_w: int, target_h: int) -> ImageF:
    """Bilinear resample with half-pixel-center alignment."""
    if img.width == target_w and img.height == target_h:
        return img
    planes = np.stack(
        [
            cv2.resize(p, (target_w, target_h), interpolation=cv2.INTER_LINEAR)
            for p in img.planes
        ]
    )
    return ImageF._wrap(planes)


def _mask_pyramid(mask: MaskImage, levels: int) -> list:
    """Nearest-neighbor decimation, re-binarized at 0.5; coarsest first."""
    seq = [mask]
    for _ in range(levels - 1):
        halved = seq[-1].data[::2, ::2]
        seq.append(MaskImage.from_array((halved > 0.5).astype(np.float64)))
    return list(reversed(seq))


def _gp_pipeline(
    src: ImageF,
    dst: ImageF,
    mask: MaskImage,
    guide: ImageF,
    params: GpParams,
    coarse_max: int = 64,
) -> ImageF:
    """Coarse-to-fine pass: solve at each scale, upsampled result guides the next."""
    scales = effective_scales(src.width, src.height, params, coarse_max)
    pyr_src = build_gaussian(src, scales).levels
    pyr_dst = build_gaussian(dst, scales).levels
    pyr_mask = _mask_pyramid(mask, scales)
    x_l = resize_bilinear(guide, pyr_src[0].width, pyr_src[0].height)
    x_h = None
    for s in range(scales):
        u = divergence(composite_field(pyr_src[s], pyr_dst[s], pyr_mask[s]))
        x_h = solve_gp(u, x_l, params)
        if s + 1 < scales:
            nxt = pyr_src[s + 1]
            x_l = upsample(x_h, nxt.width, nxt.height)
    return ImageF._wrap(np.clip(x_h.planes, 0.0, 1.0))


def gp_gan_blend(
    src: ImageF,
    dst: ImageF,
    mask: MaskImage,
    guide: ImageF,
    params: GpParams = None,
) -> ImageF:
    """Gradient-plus-color pyramid blend driven by a 64x64 RGB guide."""
    if params is None:
        params = GpParams()
    check_same_dims(src, dst, mask)
    if guide.width != 64 or guide.height != 64 or guide.channels != 3:
        raise GuideDimensionMismatch(
            f"guide must be 64x64 RGB, got {guide.width}x{guide.height} "
            f"with {guide.channels} channel(s)"
        )
    return _gp_pipeline(src, dst, mask, guide, params, coarse_max=64)


def poisson_blend(src: ImageF, dst: ImageF, mask: MaskImage) -> ImageF:
    """Classical seamless cloning: Dirichlet solve against composite gradients."""
    u = divergence(composite_field(src, dst, mask))
    x = solve_poisson_dirichlet(u, dst, mask)
    return ImageF._wrap(np.clip(x.planes, 0.0, 1.0))


def blend(req: BlendRequest) -> ImageF:
    """Dispatch a BlendRequest to its strategy; output is clamped to [0,1]."""
    if req.method == "copy-paste":
        out = composite(req.src, req.dst, req.mask)
        return ImageF._wrap(np.clip(out.planes, 0.0, 1.0))
    if req.method == "poisson":
        return poisson_blend(req.src, req.dst, req.mask)
    if req.method == "multiband":
        scales = effective_scales(
            req.src.width, req.src.height, req.params, req.guide.size
        )
        return multiband_blend(req.src, req.dst, req.mask, scales)
    guide_img = resolve_guide(req.guide, req.src, req.dst, req.mask)
    return _gp_pipeline(
        req.src, req.dst, req.mask, guide_img, req.params, req.guide.size
    )
