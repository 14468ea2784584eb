"""Produces the low-resolution color-constraint image for the GP pipeline.

The guide either comes from chain-downsampling the copy-paste composite or
from an externally produced PNG. The file contract is deliberately narrow
(8-bit RGB PNG, exactly size x size) so any producer that honors it can
drive the blender without an in-process dependency.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GuideFileBadDims
from .image import ImageF, MaskImage, check_same_dims, composite, load_image
from .pyramid import downsample


@dataclass(frozen=True)
class GuideSpec:
    kind: str  # "downsample" | "file"
    path: str = None
    size: int = 64

    def __post_init__(self):
        if self.kind not in ("downsample", "file"):
            raise ValueError(f"unknown guide kind {self.kind!r}")
        if self.kind == "file" and not self.path:
            raise ValueError("guide kind 'file' requires a path")
        if self.size < 8:
            raise ValueError(f"guide size must be at least 8, got {self.size}")


def resolve_guide(
    spec: GuideSpec, src: ImageF, dst: ImageF, mask: MaskImage
) -> ImageF:
    """Materialize the guide image declared by spec.

    kind == "downsample": repeatedly halve the copy-paste composite until its
    max dimension is <= spec.size. kind == "file": load the PNG and require
    exactly size x size RGB.
    """
    check_same_dims(src, dst, mask)
    if spec.kind == "downsample":
        img = composite(src, dst, mask)
        while max(img.width, img.height) > spec.size:
            img = downsample(img)
        return img
    img = load_image(spec.path)
    if img.width != spec.size or img.height != spec.size or img.channels != 3:
        raise GuideFileBadDims(
            f"guide file must be {spec.size}x{spec.size} RGB, got "
            f"{img.width}x{img.height} with {img.channels} channel(s)"
        )
    return img
