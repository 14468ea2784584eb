"""Fidelity proxies for blended outputs.

grad_mse measures how far a blend's gradient field sits from the composite
field it was asked to reproduce; color_mse measures low-resolution color
agreement with a guide after chain-downsampling the blend to the guide's
scale.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch
from .gradient_domain import composite_field, gradients
from .image import ImageF, MaskImage, check_same_dims
from .pyramid import downsample


def grad_mse(blended: ImageF, src: ImageF, dst: ImageF, mask: MaskImage) -> float:
    """Mean squared error between the blend's gradients and the composite field."""
    check_same_dims(blended, src, dst, mask)
    if blended.channels != src.channels or src.channels != dst.channels:
        raise DimensionMismatch("channel counts differ")
    got = gradients(blended)
    want = composite_field(src, dst, mask)
    err_x = got.gx - want.gx
    err_y = got.gy - want.gy
    return float((np.sum(err_x**2) + np.sum(err_y**2)) / (2.0 * err_x.size))


def color_mse(blended: ImageF, guide: ImageF) -> float:
    """MSE between the chain-downsampled blend and the guide."""
    img = blended
    target = max(guide.width, guide.height)
    while max(img.width, img.height) > target:
        img = downsample(img)
    if img.width != guide.width or img.height != guide.height:
        raise DimensionMismatch(
            f"downsampled blend is {img.width}x{img.height}, "
            f"guide is {guide.width}x{guide.height}"
        )
    if img.channels != guide.channels:
        raise DimensionMismatch("channel counts differ")
    return float(np.mean((img.planes - guide.planes) ** 2))
