"""Gaussian/Laplacian pyramids and classical multi-band blending.

Levels are ordered coarsest first; the finest level of a Gaussian pyramid is
the input image. Resampling uses the binomial [1, 4, 6, 4, 1]/16 generating
kernel with edge replication, ceil dimension semantics at every level, and
explicit target dims on the way up so round trips are exact in shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    BadTargetDims,
    DimensionMismatch,
    ImageTooSmall,
    TooManyLevels,
    WrongKind,
)
from .image import ImageF, MaskImage, check_same_dims

BINOMIAL5 = np.array([1.0, 4.0, 6.0, 4.0, 1.0]) / 16.0
# Zero-insertion keeps one sample in four, so the interpolation kernel
# carries a factor of 2 per axis.
BINOMIAL5_UP = BINOMIAL5 * 2.0


@dataclass(frozen=True)
class Pyramid:
    levels: tuple  # ImageF, coarsest first
    kind: str  # "gaussian" | "laplacian"

    def __post_init__(self):
        if self.kind not in ("gaussian", "laplacian"):
            raise ValueError(f"unknown pyramid kind {self.kind!r}")
        if not self.levels:
            raise ValueError("pyramid needs at least one level")

    def __len__(self):
        return len(self.levels)


def downsample(img: ImageF) -> ImageF:
    """Binomial blur then 2x decimation; output dims are ceil(input/2)."""
    if img.width < 2 or img.height < 2:
        raise ImageTooSmall(f"cannot downsample {img.width}x{img.height}")
    out = np.stack([kernels.down2(p, BINOMIAL5) for p in img.planes])
    return ImageF._wrap(out)


def upsample(img: ImageF, target_w: int, target_h: int) -> ImageF:
    """Zero-insert to the target size and interpolate with the doubled kernel."""
    if not (2 * img.width - 1 <= target_w <= 2 * img.width):
        raise BadTargetDims(f"target width {target_w} for input width {img.width}")
    if not (2 * img.height - 1 <= target_h <= 2 * img.height):
        raise BadTargetDims(f"target height {target_h} for input height {img.height}")
    out = np.stack(
        [kernels.up2(p, target_h, target_w, BINOMIAL5_UP) for p in img.planes]
    )
    return ImageF._wrap(out)


def _check_depth(img: ImageF, levels: int) -> None:
    if levels < 1:
        raise TooManyLevels(f"need at least one level, got {levels}")
    shrink = 1 << (levels - 1)
    coarse_w = -(-img.width // shrink)
    coarse_h = -(-img.height // shrink)
    if levels > 1 and (coarse_w < 2 or coarse_h < 2):
        raise TooManyLevels(
            f"{levels} levels shrink {img.width}x{img.height} below 2 px"
        )


def build_gaussian(img: ImageF, levels: int) -> Pyramid:
    """Repeatedly blur-and-halve; finest level equals the input."""
    _check_depth(img, levels)
    seq = [img]
    for _ in range(levels - 1):
        seq.append(downsample(seq[-1]))
    return Pyramid(tuple(reversed(seq)), "gaussian")


def build_laplacian(img: ImageF, levels: int) -> Pyramid:
    """Band-pass differences plus the coarsest Gaussian level."""
    gauss = build_gaussian(img, levels).levels
    out = [gauss[0]]
    for coarse, fine in zip(gauss, gauss[1:]):
        up = upsample(coarse, fine.width, fine.height)
        out.append(ImageF._wrap(fine.planes - up.planes))
    return Pyramid(tuple(out), "laplacian")


def reconstruct(pyr: Pyramid) -> ImageF:
    """Invert build_laplacian: upsample-and-add from coarsest to finest."""
    if pyr.kind != "laplacian":
        raise WrongKind(f"cannot reconstruct a {pyr.kind} pyramid")
    acc = pyr.levels[0]
    for level in pyr.levels[1:]:
        up = upsample(acc, level.width, level.height)
        acc = ImageF._wrap(up.planes + level.planes)
    return acc


def multiband_blend(src: ImageF, dst: ImageF, mask: MaskImage, levels: int) -> ImageF:
    """Blend Laplacian bands of src/dst weighted by the mask's Gaussian pyramid."""
    check_same_dims(src, dst, mask)
    if src.channels != dst.channels:
        raise DimensionMismatch(
            f"channel mismatch: {src.channels} vs {dst.channels}"
        )
    lap_src = build_laplacian(src, levels).levels
    lap_dst = build_laplacian(dst, levels).levels
    weights = build_gaussian(ImageF._wrap(mask.data[None]), levels).levels
    blended = []
    for ls, ld, wt in zip(lap_src, lap_dst, weights):
        w = wt.planes[0]
        blended.append(ImageF._wrap(w * ls.planes + (1.0 - w) * ld.planes))
    out = reconstruct(Pyramid(tuple(blended), "laplacian"))
    return ImageF._wrap(np.clip(out.planes, 0.0, 1.0))


def auto_scale_count(width: int, height: int, coarse_max: int = 64) -> int:
    """Pick the pyramid depth whose coarsest level has max dim <= coarse_max."""
    levels = max(1, 1 + math.ceil(math.log2(max(width, height) / coarse_max)))
    while levels > 1 and min(width, height) <= (1 << (levels - 1)):
        levels -= 1
    return levels
