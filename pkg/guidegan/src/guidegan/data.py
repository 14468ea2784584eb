"""Training pairs for the blending generator.

A pair is built from two aligned photos of the same scene: a central square
crop of one is pasted onto the other, and the untouched photo is the
regression target.  At desk scale the aligned pairs are synthesised as
photometric variants of random smooth scenes.
"""

import os

import cv2
import numpy as np
import torch
from torch.utils.data import Dataset

from .errors import EmptyDataset, MisalignedPair


def make_training_pair(img_a, img_b):
    """Composite the central square of img_a onto img_b; target is img_b.

    Both images are float tensors shaped (3, S, S) with values in [0, 1].
    The pasted square has side S // 2 and is centred.  Raises MisalignedPair
    when the two shapes disagree and ValueError on malformed inputs.
    """
    a = torch.as_tensor(img_a, dtype=torch.float32)
    b = torch.as_tensor(img_b, dtype=torch.float32)
    if a.shape != b.shape:
        raise MisalignedPair(f"pair shapes disagree: {tuple(a.shape)} vs {tuple(b.shape)}")
    if a.ndim != 3 or a.shape[0] != 3 or a.shape[1] != a.shape[2]:
        raise ValueError(f"expected (3, S, S) images, got {tuple(a.shape)}")
    if a.shape[1] < 4:
        raise ValueError("images too small to carve a central square")
    side = a.shape[1]
    half = side // 2
    lo = (side - half) // 2
    hi = lo + half
    composite = b.clone()
    composite[:, lo:hi, lo:hi] = a[:, lo:hi, lo:hi]
    return composite, b.clone()


def smooth_scene(rng, size):
    """Random smooth RGB field in [0.1, 0.9], (3, size, size) float32."""
    coarse = rng.uniform(0.1, 0.9, size=(6, 6, 3))
    img = cv2.resize(coarse, (size, size), interpolation=cv2.INTER_CUBIC)
    img = img + 0.015 * rng.standard_normal(size=(size, size, 3))
    img = np.clip(img, 0.0, 1.0)
    return np.ascontiguousarray(img.transpose(2, 0, 1)).astype(np.float32)


def photometric_variant(rng, img):
    """Per-channel gain and offset jitter, clipped to [0, 1]."""
    gain = rng.uniform(0.85, 1.12, size=(3, 1, 1)).astype(np.float32)
    offset = rng.uniform(-0.05, 0.05, size=(3, 1, 1)).astype(np.float32)
    return np.clip(img * gain + offset, 0.0, 1.0)


class SyntheticPairs(Dataset):
    """Fixed corpus of aligned same-scene pairs generated from a seed."""

    def __init__(self, count, image_size, seed=0):
        if count <= 0:
            raise EmptyDataset("synthetic pair count must be positive")
        rng = np.random.default_rng(seed)
        self.items = []
        for _ in range(count):
            scene = smooth_scene(rng, image_size)
            variant = photometric_variant(rng, scene)
            self.items.append(make_training_pair(variant, scene))

    def __len__(self):
        return len(self.items)

    def __getitem__(self, idx):
        return self.items[idx]


def _load_rgb(path, image_size):
    raw = cv2.imread(path, cv2.IMREAD_COLOR)
    if raw is None:
        raise OSError(f"cannot read image: {path}")
    if raw.shape[0] != image_size or raw.shape[1] != image_size:
        raw = cv2.resize(raw, (image_size, image_size), interpolation=cv2.INTER_AREA)
    rgb = cv2.cvtColor(raw, cv2.COLOR_BGR2RGB).astype(np.float32) / 255.0
    return np.ascontiguousarray(rgb.transpose(2, 0, 1))


class FolderPairs(Dataset):
    """Aligned pairs read from a directory of scene folders.

    Every subdirectory with two or more PNG images contributes all ordered
    pairs of distinct images, each resized to the training resolution.
    """

    def __init__(self, root, image_size):
        if not os.path.isdir(root):
            raise EmptyDataset(f"dataset directory does not exist: {root}")
        self.items = []
        for name in sorted(os.listdir(root)):
            folder = os.path.join(root, name)
            if not os.path.isdir(folder):
                continue
            paths = sorted(
                os.path.join(folder, f)
                for f in os.listdir(folder)
                if f.lower().endswith(".png")
            )
            if len(paths) < 2:
                continue
            images = [torch.from_numpy(_load_rgb(p, image_size)) for p in paths]
            for i in range(len(images)):
                for j in range(len(images)):
                    if i != j:
                        self.items.append(make_training_pair(images[i], images[j]))
        if not self.items:
            raise EmptyDataset(f"no scene folder under {root} holds two or more PNGs")

    def __len__(self):
        return len(self.items)

    def __getitem__(self, idx):
        return self.items[idx]
