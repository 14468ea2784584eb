"""Core image containers, compositing, and lossless PNG I/O.

Images are stored as planar float64 arrays of shape (channels, height, width)
with file values mapped into [0, 1]. Intermediate solver results may leave
that range; clamping happens only when saving.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import cv2
import numpy as np

from .errors import DimensionMismatch, ImageIOError, UnsupportedFormat

_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"

# Rec. 601 luma weights, used to collapse RGB mask annotations to one plane.
_LUMA = (0.299, 0.587, 0.114)


def _lock(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class ImageF:
    """Planar float64 image; 1 (grayscale) or 3 (RGB) channels."""

    planes: np.ndarray  # (channels, height, width), read-only

    def __post_init__(self):
        p = self.planes
        if p.ndim != 3 or p.shape[0] not in (1, 3):
            raise ValueError(f"expected (1|3, H, W) planes, got {p.shape}")
        if p.shape[1] < 1 or p.shape[2] < 1:
            raise ValueError(f"empty image: {p.shape}")
        if p.dtype != np.float64:
            raise ValueError(f"planes must be float64, got {p.dtype}")

    @classmethod
    def from_planes(cls, planes: np.ndarray) -> "ImageF":
        """Build from an array, copying so the caller's buffer stays free."""
        return cls(_lock(np.ascontiguousarray(planes, dtype=np.float64).copy()))

    @classmethod
    def _wrap(cls, planes: np.ndarray) -> "ImageF":
        # Internal: adopt a freshly allocated array without copying.
        return cls(_lock(np.ascontiguousarray(planes)))

    @property
    def channels(self) -> int:
        return self.planes.shape[0]

    @property
    def height(self) -> int:
        return self.planes.shape[1]

    @property
    def width(self) -> int:
        return self.planes.shape[2]

    @property
    def shape(self):
        """(channels, height, width)"""
        return self.planes.shape


@dataclass(frozen=True)
class MaskImage:
    """Single-channel hard-binary mask; every value is exactly 0.0 or 1.0."""

    data: np.ndarray  # (height, width), read-only

    def __post_init__(self):
        d = self.data
        if d.ndim != 2:
            raise ValueError(f"mask must be 2-D, got {d.shape}")
        if d.dtype != np.float64:
            raise ValueError(f"mask must be float64, got {d.dtype}")
        if not np.all((d == 0.0) | (d == 1.0)):
            raise ValueError("mask values must be exactly 0.0 or 1.0")

    @classmethod
    def from_array(cls, data: np.ndarray) -> "MaskImage":
        return cls(_lock(np.ascontiguousarray(data, dtype=np.float64).copy()))

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]


def check_same_dims(*items) -> None:
    """Raise DimensionMismatch unless all images/masks share height and width."""
    dims = {(it.height, it.width) for it in items}
    if len(dims) > 1:
        raise DimensionMismatch(f"mismatched dimensions: {sorted(dims)}")


def composite(src: ImageF, dst: ImageF, mask: MaskImage) -> ImageF:
    """Per-pixel copy-and-paste: src where mask is 1, dst where mask is 0."""
    check_same_dims(src, dst, mask)
    if src.channels != dst.channels:
        raise DimensionMismatch(
            f"channel mismatch: {src.channels} vs {dst.channels}"
        )
    out = np.where(mask.data[None, :, :] == 1.0, src.planes, dst.planes)
    return ImageF._wrap(out)


def _decode_png(path: str) -> np.ndarray:
    if not os.path.isfile(path):
        raise ImageIOError(f"no such file: {path}")
    with open(path, "rb") as fh:
        magic = fh.read(8)
    if magic != _PNG_MAGIC:
        raise UnsupportedFormat(f"not a PNG file: {path}")
    raw = cv2.imread(path, cv2.IMREAD_UNCHANGED)
    if raw is None:
        raise ImageIOError(f"failed to decode {path}")
    if raw.dtype == np.uint8:
        maxval = 255.0
    elif raw.dtype == np.uint16:
        maxval = 65535.0
    else:
        raise UnsupportedFormat(f"unsupported sample type {raw.dtype} in {path}")
    if raw.ndim == 3:
        if raw.shape[2] != 3:
            raise UnsupportedFormat(
                f"{path} has {raw.shape[2]} channels; only grayscale/RGB PNG"
            )
        raw = raw[:, :, ::-1]  # BGR -> RGB
    return raw.astype(np.float64) / maxval


def load_image(path: str) -> ImageF:
    """Load an 8- or 16-bit PNG, mapping samples to [0, 1] by the type max."""
    arr = _decode_png(path)
    if arr.ndim == 2:
        planes = arr[None, :, :]
    else:
        planes = np.moveaxis(arr, 2, 0)
    return ImageF._wrap(np.ascontiguousarray(planes))


def save_image(img: ImageF, path: str) -> None:
    """Clamp to [0, 1], round half up to 8 bits, write a PNG."""
    parent = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(parent):
        raise ImageIOError(f"parent directory does not exist: {parent}")
    clamped = np.clip(img.planes, 0.0, 1.0)
    quant = np.floor(clamped * 255.0 + 0.5).astype(np.uint8)
    if img.channels == 1:
        pixels = quant[0]
    else:
        pixels = np.moveaxis(quant, 0, 2)[:, :, ::-1]  # RGB -> BGR
    if not cv2.imwrite(path, pixels):
        raise ImageIOError(f"failed to write {path}")


def load_mask(path: str, threshold: float = 0.5) -> MaskImage:
    """Load a PNG and binarize: 1.0 where luminance > threshold, else 0.0."""
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold must be in [0, 1], got {threshold}")
    arr = _decode_png(path)
    if arr.ndim == 2:
        lum = arr
    else:
        lum = _LUMA[0] * arr[:, :, 0] + _LUMA[1] * arr[:, :, 1] + _LUMA[2] * arr[:, :, 2]
    return MaskImage(_lock((lum > threshold).astype(np.float64)))
