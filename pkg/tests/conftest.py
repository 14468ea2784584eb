"""Shared fixtures: synthetic scene corpus, dense operator oracles, PNG writers.

Corpus images are tileable smooth scenes (axis-aligned illumination waves,
interior Gaussian blobs, mild steep-spectrum texture) whose borders stay calm
so pyramid edge replication and the periodic solver agree; triples pair each
scene with a photometric variant of itself, mirroring same-scene-different-
conditions compositing. The PNG writers here build files byte-by-byte so the
loader is checked against an independent encoder.
"""

from __future__ import annotations

import struct
import zlib

import numpy as np
import pytest

from gpblend import ImageF, MaskImage
from gpblend.pyramid import auto_scale_count

CORPUS_SIZES = ((128, 128), (256, 256), (96, 96), (192, 192))


def periodic_noise(rng, h, w, alpha):
    """Random-phase noise with a 1/f^alpha amplitude spectrum; tileable."""
    fy = np.fft.fftfreq(h)[:, None]
    fx = np.fft.fftfreq(w)[None, :]
    f = np.hypot(fy, fx)
    f[0, 0] = 1.0
    amp = f ** (-alpha)
    amp[0, 0] = 0.0
    phase = np.exp(2j * np.pi * rng.random((h, w)))
    field = np.fft.ifft2(amp * phase).real
    return field / np.abs(field).max()


def scene_field(rng, h, w, shrink, sig_factor=8.0):
    """Smooth scalar scene: border-calm illumination plus interior blobs."""
    yy, xx = np.mgrid[0:h, 0:w].astype(np.float64)
    field = np.zeros((h, w))
    for axis_coord, span in ((xx, w), (yy, h)):
        k_max = max(1, (span // shrink) // 32)
        k = int(rng.integers(1, k_max + 1))
        amp = rng.uniform(0.05, 0.2) * rng.choice([-1.0, 1.0])
        field += amp * np.cos(2 * np.pi * k * (axis_coord + 0.5) / span)
    sig_min = sig_factor * shrink
    sig_max = max(sig_min + 1.0, min(h, w) / 6)
    for _ in range(rng.integers(3, 6)):
        sig = rng.uniform(sig_min, sig_max)
        lo_y, hi_y = 2.5 * sig, h - 2.5 * sig
        lo_x, hi_x = 2.5 * sig, w - 2.5 * sig
        cy = rng.uniform(lo_y, hi_y) if hi_y > lo_y else h / 2
        cx = rng.uniform(lo_x, hi_x) if hi_x > lo_x else w / 2
        amp = rng.uniform(0.04, 0.12) * rng.choice([-1.0, 1.0])
        field += amp * np.exp(-(((yy - cy) ** 2 + (xx - cx) ** 2) / (2 * sig * sig)))
    return field


def corpus_image(rng, h, w, tex_amp=0.02, tex_alpha=2.5):
    """Three-channel scene image in [0.15, 0.85]."""
    shrink = 2 ** (auto_scale_count(w, h) - 1)
    lum = scene_field(rng, h, w, shrink)
    planes = []
    for _ in range(3):
        tint = scene_field(rng, h, w, shrink)
        planes.append(
            0.8 * lum + 0.2 * tint + tex_amp * periodic_noise(rng, h, w, tex_alpha)
        )
    arr = np.stack(planes)
    arr = 0.15 + 0.7 * (arr - arr.min()) / (arr.max() - arr.min())
    return ImageF.from_planes(arr)


def photometric_variant(rng, img):
    """Same scene under different global lighting: per-channel gain/offset."""
    planes = img.planes.copy()
    for c in range(3):
        gain = rng.uniform(0.85, 1.12)
        offset = rng.uniform(-0.05, 0.05)
        planes[c] = planes[c] * gain + offset
    return ImageF.from_planes(np.clip(planes, 0.0, 1.0))


def ellipse_mask(rng, h, w):
    """Hard-binary interior ellipse covering roughly 5-15% of the frame."""
    yy, xx = np.mgrid[0:h, 0:w].astype(np.float64)
    ry = rng.uniform(0.12, 0.22) * h
    rx = rng.uniform(0.12, 0.22) * w
    cy = rng.uniform(ry + 2, h - ry - 2)
    cx = rng.uniform(rx + 2, w - rx - 2)
    inside = ((yy - cy) / ry) ** 2 + ((xx - cx) / rx) ** 2 <= 1.0
    return MaskImage.from_array(inside.astype(np.float64))


def corpus_triple(seed):
    """Deterministic (src, dst, mask) with a non-trivial seam."""
    rng = np.random.default_rng(1000 + seed)
    h, w = CORPUS_SIZES[seed % len(CORPUS_SIZES)]
    dst = corpus_image(rng, h, w)
    src = photometric_variant(rng, dst)
    mask = ellipse_mask(rng, h, w)
    return src, dst, mask


@pytest.fixture(scope="session")
def corpus_triples():
    return [corpus_triple(seed) for seed in range(20)]


def dense_circular_laplacian(h, w):
    """Explicit matrix of the 5-point Laplacian with circular wrap."""
    n = h * w
    mat = np.zeros((n, n))
    for i in range(h):
        for j in range(w):
            p = (i % h) * w + (j % w)
            mat[p, p] -= 4.0
            for di, dj in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                q = ((i + di) % h) * w + ((j + dj) % w)
                mat[p, q] += 1.0
    return mat


def dense_circular_blur(kern, h, w):
    """Explicit matrix of separable circular convolution with `kern`."""
    kern = np.asarray(kern, dtype=np.float64)
    r = len(kern) // 2
    n = h * w
    mat = np.zeros((n, n))
    for i in range(h):
        for j in range(w):
            p = i * w + j
            for a, ka in enumerate(kern):
                for b, kb in enumerate(kern):
                    q = ((i + a - r) % h) * w + ((j + b - r) % w)
                    mat[p, q] += ka * kb
    return mat


def _png_chunk(tag, payload):
    return (
        struct.pack(">I", len(payload))
        + tag
        + payload
        + struct.pack(">I", zlib.crc32(tag + payload))
    )


def write_png(path, samples):
    """Minimal PNG encoder: filter 0, no interlace; uint8 or uint16 samples.

    samples: (H, W) grayscale or (H, W, 3) RGB array.
    """
    samples = np.asarray(samples)
    if samples.dtype == np.uint8:
        depth = 8
    elif samples.dtype == np.uint16:
        depth = 16
    else:
        raise ValueError("samples must be uint8 or uint16")
    if samples.ndim == 2:
        color_type = 0
    elif samples.ndim == 3 and samples.shape[2] == 3:
        color_type = 2
    else:
        raise ValueError("samples must be (H, W) or (H, W, 3)")
    h, w = samples.shape[:2]
    ihdr = struct.pack(">IIBBBBB", w, h, depth, color_type, 0, 0, 0)
    row_bytes = samples.astype(">u2" if depth == 16 else "u1").tobytes()
    stride = len(row_bytes) // h
    raw = b"".join(
        b"\x00" + row_bytes[i * stride : (i + 1) * stride] for i in range(h)
    )
    data = (
        b"\x89PNG\r\n\x1a\n"
        + _png_chunk(b"IHDR", ihdr)
        + _png_chunk(b"IDAT", zlib.compress(raw))
        + _png_chunk(b"IEND", b"")
    )
    with open(path, "wb") as fh:
        fh.write(data)
