"""Guide export: run a trained generator on a composite photo and write the
low-resolution result as an 8-bit RGB PNG."""

import os

import cv2
import numpy as np
import torch

from .checkpoint import load_generator


def load_composite(path, image_size):
    """Read an RGB PNG, resize to the model resolution, return (3, S, S) in [0, 1]."""
    raw = cv2.imread(path, cv2.IMREAD_COLOR)
    if raw is None:
        raise OSError(f"cannot read composite image: {path}")
    if raw.shape[0] != image_size or raw.shape[1] != image_size:
        interp = cv2.INTER_AREA if raw.shape[0] > image_size else cv2.INTER_LINEAR
        raw = cv2.resize(raw, (image_size, image_size), interpolation=interp)
    rgb = cv2.cvtColor(raw, cv2.COLOR_BGR2RGB).astype(np.float32) / 255.0
    return np.ascontiguousarray(rgb.transpose(2, 0, 1))


def write_guide_png(path, planes):
    """Store (3, S, S) values in [0, 1] as an 8-bit RGB PNG."""
    parent = os.path.dirname(path) or "."
    if not os.path.isdir(parent):
        raise OSError(f"output directory does not exist: {parent}")
    clipped = np.clip(planes, 0.0, 1.0)
    u8 = np.floor(clipped * 255.0 + 0.5).astype(np.uint8)
    bgr = cv2.cvtColor(u8.transpose(1, 2, 0), cv2.COLOR_RGB2BGR)
    if not cv2.imwrite(path, bgr):
        raise OSError(f"cannot write PNG: {path}")


def run_generator(net, planes):
    """Forward one (3, S, S) composite in [0, 1]; returns (3, S, S) in [0, 1]."""
    net.eval()
    with torch.no_grad():
        batch = torch.from_numpy(np.asarray(planes, dtype=np.float32)).unsqueeze(0)
        out = net(batch)[0]
    return out.clamp(0.0, 1.0).numpy().astype(np.float64)


def export_guide(ckpt_dir, composite_path, out_path):
    """Produce a guide PNG from a blending-generator checkpoint.

    The composite photo is resized to the checkpoint's training resolution,
    pushed through the generator, and the output is written to out_path as an
    8-bit RGB PNG of that same resolution.  Returns out_path.
    """
    net, net_cfg, _, _ = load_generator(ckpt_dir, expect_kind="blend")
    planes = load_composite(composite_path, net_cfg.image_size)
    guide = run_generator(net, planes)
    write_guide_png(out_path, guide)
    return out_path
