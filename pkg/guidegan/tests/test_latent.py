"""Latent-space search behaviour."""

import numpy as np
import pytest
import torch

from guidegan import (
    LatentSearchConfig,
    OptimizerFailed,
    build_unsup_generator,
    latent_search,
    sample_latent,
)
from conftest import TINY


@pytest.fixture(scope="module")
def frozen_generator():
    torch.manual_seed(77)
    net = build_unsup_generator(TINY)
    net.eval()
    return net


def decode(net, z_values):
    with torch.no_grad():
        z = torch.tensor(np.asarray(z_values), dtype=torch.float32)
        out = net(z.view(1, -1, 1, 1))[0]
    return ((out + 1.0) / 2.0).clamp(0.0, 1.0).numpy()


class TestConfig:
    def test_rejects_bad_values(self):
        with pytest.raises(ValueError):
            LatentSearchConfig(starts=0)
        with pytest.raises(ValueError):
            LatentSearchConfig(max_iter=0)


class TestSearch:
    def test_recovers_known_code(self, frozen_generator):
        rng = np.random.default_rng(13)
        z0 = rng.standard_normal(TINY.z_dim)
        composite = decode(frozen_generator, z0)
        cfg = LatentSearchConfig(starts=2, max_iter=100, seed=0, z0=tuple(z0))
        result = latent_search(frozen_generator, composite, cfg)
        assert result.loss <= 1e-6

    def test_result_guide_shape_and_range(self, frozen_generator):
        composite = decode(frozen_generator, np.zeros(TINY.z_dim))
        cfg = LatentSearchConfig(starts=1, max_iter=20, seed=1)
        result = latent_search(frozen_generator, composite, cfg)
        assert result.guide.shape == (3, 64, 64)
        assert result.guide.min() >= 0.0
        assert result.guide.max() <= 1.0
        assert result.z.shape == (TINY.z_dim,)
        assert len(result.start_losses) == 1

    def test_guide_decodes_best_code(self, frozen_generator):
        composite = decode(frozen_generator, np.ones(TINY.z_dim) * 0.3)
        cfg = LatentSearchConfig(starts=2, max_iter=40, seed=2)
        result = latent_search(frozen_generator, composite, cfg)
        assert np.allclose(result.guide, decode(frozen_generator, result.z), atol=1e-7)

    def test_multi_start_never_loses_to_single(self, frozen_generator):
        rng = np.random.default_rng(3)
        composite = decode(frozen_generator, rng.standard_normal(TINY.z_dim))
        single = latent_search(
            frozen_generator, composite, LatentSearchConfig(starts=1, max_iter=40, seed=4)
        )
        multi = latent_search(
            frozen_generator, composite, LatentSearchConfig(starts=4, max_iter=40, seed=4)
        )
        # the start sets are nested, so the best of four cannot be worse
        assert multi.loss <= single.loss
        assert multi.start_losses[0] == pytest.approx(single.loss, rel=1e-12)

    def test_search_is_deterministic(self, frozen_generator):
        composite = decode(frozen_generator, np.full(TINY.z_dim, -0.4))
        cfg = LatentSearchConfig(starts=2, max_iter=30, seed=5)
        a = latent_search(frozen_generator, composite, cfg)
        b = latent_search(frozen_generator, composite, cfg)
        assert a.loss == b.loss
        assert np.array_equal(a.z, b.z)

    def test_bad_composite_shape_raises(self, frozen_generator):
        cfg = LatentSearchConfig(starts=1, max_iter=10)
        with pytest.raises(ValueError):
            latent_search(frozen_generator, np.zeros((64, 64, 3)), cfg)

    def test_wrong_z0_size_raises(self, frozen_generator):
        composite = decode(frozen_generator, np.zeros(TINY.z_dim))
        cfg = LatentSearchConfig(starts=1, max_iter=10, z0=(0.0, 1.0))
        with pytest.raises(ValueError):
            latent_search(frozen_generator, composite, cfg)

    def test_warns_but_returns_when_nothing_converges(self, frozen_generator):
        rng = np.random.default_rng(6)
        composite = np.clip(rng.uniform(0, 1, (3, 64, 64)), 0, 1)
        cfg = LatentSearchConfig(starts=1, max_iter=1, seed=7)
        with pytest.warns(OptimizerFailed):
            result = latent_search(frozen_generator, composite, cfg)
        assert np.isfinite(result.loss)
        assert not result.converged
        assert result.guide.shape == (3, 64, 64)

    def test_losses_decrease_with_more_iterations(self, frozen_generator):
        rng = np.random.default_rng(8)
        z_true = rng.standard_normal(TINY.z_dim)
        composite = decode(frozen_generator, z_true)
        short = latent_search(
            frozen_generator, composite, LatentSearchConfig(starts=1, max_iter=3, seed=9)
        )
        long = latent_search(
            frozen_generator, composite, LatentSearchConfig(starts=1, max_iter=80, seed=9)
        )
        assert long.loss <= short.loss


def test_untrained_batch_norm_keeps_search_reproducible():
    torch.manual_seed(5)
    net = build_unsup_generator(TINY)
    net.eval()
    z = sample_latent(TINY, 1, torch.Generator().manual_seed(0))
    with torch.no_grad():
        first = net(z)
        second = net(z)
    assert torch.equal(first, second)
