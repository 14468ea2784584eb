"""Shared fixtures: a small network config, quick checkpoints, PNG helpers."""

import numpy as np
import cv2
import pytest

from guidegan import NetConfig, TrainConfig, train
from guidegan.data import photometric_variant, smooth_scene

TINY = NetConfig(image_size=64, channels=(8, 16), bottleneck=64, z_dim=8)


@pytest.fixture(scope="session")
def tiny_net():
    return TINY


@pytest.fixture(scope="session")
def quick_blend_ckpt(tmp_path_factory):
    """Three-epoch blending checkpoint for interface tests."""
    out = tmp_path_factory.mktemp("ckpt") / "blend"
    cfg = TrainConfig(epochs=3, batch_size=8, synthetic_pairs=24, seed=5, net=TINY)
    return train(None, cfg, str(out))


@pytest.fixture(scope="session")
def quick_unsup_ckpt(tmp_path_factory):
    """Two-epoch latent-generator checkpoint for interface tests."""
    out = tmp_path_factory.mktemp("ckpt") / "unsup"
    cfg = TrainConfig(epochs=2, batch_size=8, synthetic_pairs=16, seed=6, net=TINY)
    return train(None, cfg, str(out), kind="unsup")


def save_rgb_png(path, planes):
    """Write (3, H, W) float values in [0, 1] as an 8-bit RGB PNG."""
    u8 = np.floor(np.clip(np.asarray(planes), 0.0, 1.0) * 255.0 + 0.5).astype(np.uint8)
    ok = cv2.imwrite(str(path), cv2.cvtColor(u8.transpose(1, 2, 0), cv2.COLOR_RGB2BGR))
    assert ok, f"could not write {path}"
    return str(path)


def scene_pair(seed, size):
    """Aligned same-scene pair: a smooth field and its photometric variant."""
    rng = np.random.default_rng(seed)
    scene = smooth_scene(rng, size)
    return photometric_variant(rng, scene), scene


@pytest.fixture()
def composite_png(tmp_path):
    """A 128 by 128 composite photo saved as PNG."""
    variant, scene = scene_pair(31, 128)
    comp = scene.copy()
    comp[:, 32:96, 32:96] = variant[:, 32:96, 32:96]
    return save_rgb_png(tmp_path / "composite.png", comp)
