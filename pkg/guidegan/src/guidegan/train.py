"""Training loops for the blending generator and the latent texture generator."""

import csv
import dataclasses
import os

import torch
from torch.utils.data import DataLoader

from .checkpoint import save_checkpoint
from .data import FolderPairs, SyntheticPairs
from .losses import clip_weights, critic_loss, l2_term
from .models import NetConfig, build_blend_generator, build_critic, build_unsup_generator, sample_latent

SMOOTH_WINDOW = 3


@dataclasses.dataclass(frozen=True)
class TrainConfig:
    """Optimisation settings; the defaults mirror the full-scale recipe."""

    lambda_l2: float = 0.999
    adam_alpha_g: float = 0.002
    adam_beta1: float = 0.5
    adam_alpha_d: float = 0.0002
    epochs: int = 25
    batch_size: int = 64
    clip: float = 0.01
    critic_steps: int = 1
    seed: int = 0
    synthetic_pairs: int = 100
    net: NetConfig = NetConfig()

    def __post_init__(self):
        if not 0.0 < self.lambda_l2 <= 1.0:
            raise ValueError("lambda_l2 must lie in (0, 1]")
        if self.adam_alpha_g <= 0 or self.adam_alpha_d <= 0:
            raise ValueError("learning rates must be positive")
        if not 0.0 <= self.adam_beta1 < 1.0:
            raise ValueError("adam_beta1 must lie in [0, 1)")
        if self.epochs < 1:
            raise ValueError("epochs must be at least 1")
        if self.batch_size < 2:
            raise ValueError("batch_size must be at least 2")
        if self.clip <= 0:
            raise ValueError("clip must be positive")
        if self.critic_steps < 1:
            raise ValueError("critic_steps must be at least 1")
        if self.synthetic_pairs < 0:
            raise ValueError("synthetic_pairs must be non-negative")


def _make_dataset(dataset_dir, cfg):
    if dataset_dir is not None:
        return FolderPairs(dataset_dir, cfg.net.image_size)
    return SyntheticPairs(cfg.synthetic_pairs, cfg.net.image_size, cfg.seed)


def _make_loader(dataset, cfg):
    gen = torch.Generator().manual_seed(cfg.seed)
    return DataLoader(dataset, batch_size=cfg.batch_size, shuffle=True, generator=gen)


def _write_loss_csv(out_dir, fieldnames, rows):
    with open(os.path.join(out_dir, "loss.csv"), "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fieldnames)
        writer.writeheader()
        writer.writerows(rows)


def _train_meta(cfg, kind, n_items):
    meta = dataclasses.asdict(cfg)
    del meta["net"]
    meta["kind"] = kind
    meta["dataset_size"] = n_items
    return meta


def train(dataset_dir, cfg, out_dir, kind="blend"):
    """Train a generator and write a checkpoint directory with loss.csv.

    dataset_dir of None selects the built-in synthetic pair corpus.  kind
    picks the supervised blending generator or the latent texture generator.
    Returns out_dir.
    """
    if kind == "blend":
        return _train_blend(dataset_dir, cfg, out_dir)
    if kind == "unsup":
        return _train_unsup(dataset_dir, cfg, out_dir)
    raise ValueError(f"unknown training kind: {kind!r}")


def _train_blend(dataset_dir, cfg, out_dir):
    torch.manual_seed(cfg.seed)
    dataset = _make_dataset(dataset_dir, cfg)
    loader = _make_loader(dataset, cfg)
    generator = build_blend_generator(cfg.net)
    use_critic = cfg.lambda_l2 < 1.0
    critic = build_critic(cfg.net) if use_critic else None
    opt_g = torch.optim.Adam(
        generator.parameters(), lr=cfg.adam_alpha_g, betas=(cfg.adam_beta1, 0.999)
    )
    opt_d = (
        torch.optim.Adam(critic.parameters(), lr=cfg.adam_alpha_d, betas=(cfg.adam_beta1, 0.999))
        if use_critic
        else None
    )
    rows = []
    l2_history = []
    for epoch in range(1, cfg.epochs + 1):
        l2_sum = adv_sum = critic_sum = 0.0
        n_seen = 0
        for composite, target in loader:
            # single-sample batches break batch norm statistics
            if composite.shape[0] < 2:
                continue
            if use_critic:
                for _ in range(cfg.critic_steps):
                    with torch.no_grad():
                        fake = generator(composite)
                    d_loss = critic_loss(critic, target, fake)
                    opt_d.zero_grad()
                    d_loss.backward()
                    opt_d.step()
                    clip_weights(critic, cfg.clip)
                    critic_sum += d_loss.detach().item() * composite.shape[0]
            output = generator(composite)
            l2 = l2_term(output, target)
            total = cfg.lambda_l2 * l2
            adv_value = 0.0
            if use_critic:
                adv = critic(target).mean() - critic(output).mean()
                total = total + (1.0 - cfg.lambda_l2) * adv
                adv_value = adv.detach().item()
            opt_g.zero_grad()
            total.backward()
            opt_g.step()
            l2_sum += l2.detach().item() * composite.shape[0]
            adv_sum += adv_value * composite.shape[0]
            n_seen += composite.shape[0]
        if n_seen == 0:
            raise ValueError("every batch was skipped; use a larger dataset or smaller batch")
        l2_mean = l2_sum / n_seen
        l2_history.append(l2_mean)
        window = l2_history[-SMOOTH_WINDOW:]
        rows.append(
            {
                "epoch": epoch,
                "l2": f"{l2_mean:.9g}",
                "adv": f"{adv_sum / n_seen:.9g}",
                "critic": f"{critic_sum / (n_seen * cfg.critic_steps or 1):.9g}",
                "smoothed_l2": f"{sum(window) / len(window):.9g}",
            }
        )
    save_checkpoint(
        out_dir, "blend", cfg.net, generator, critic, _train_meta(cfg, "blend", len(dataset))
    )
    _write_loss_csv(out_dir, ["epoch", "l2", "adv", "critic", "smoothed_l2"], rows)
    return out_dir


def _train_unsup(dataset_dir, cfg, out_dir):
    torch.manual_seed(cfg.seed)
    dataset = _make_dataset(dataset_dir, cfg)
    loader = _make_loader(dataset, cfg)
    generator = build_unsup_generator(cfg.net)
    critic = build_critic(cfg.net)
    opt_g = torch.optim.Adam(
        generator.parameters(), lr=cfg.adam_alpha_g, betas=(cfg.adam_beta1, 0.999)
    )
    opt_d = torch.optim.Adam(
        critic.parameters(), lr=cfg.adam_alpha_d, betas=(cfg.adam_beta1, 0.999)
    )
    rows = []
    for epoch in range(1, cfg.epochs + 1):
        g_sum = critic_sum = 0.0
        n_seen = 0
        for _, target in loader:
            if target.shape[0] < 2:
                continue
            real = target * 2.0 - 1.0
            z = sample_latent(cfg.net, target.shape[0])
            for _ in range(cfg.critic_steps):
                with torch.no_grad():
                    fake = generator(z)
                d_loss = critic_loss(critic, real, fake)
                opt_d.zero_grad()
                d_loss.backward()
                opt_d.step()
                clip_weights(critic, cfg.clip)
                critic_sum += d_loss.detach().item() * target.shape[0]
            fake = generator(z)
            g_loss = -critic(fake).mean()
            opt_g.zero_grad()
            g_loss.backward()
            opt_g.step()
            g_sum += g_loss.detach().item() * target.shape[0]
            n_seen += target.shape[0]
        if n_seen == 0:
            raise ValueError("every batch was skipped; use a larger dataset or smaller batch")
        rows.append(
            {
                "epoch": epoch,
                "g_adv": f"{g_sum / n_seen:.9g}",
                "critic": f"{critic_sum / (n_seen * cfg.critic_steps or 1):.9g}",
            }
        )
    save_checkpoint(
        out_dir, "unsup", cfg.net, generator, critic, _train_meta(cfg, "unsup", len(dataset))
    )
    _write_loss_csv(out_dir, ["epoch", "g_adv", "critic"], rows)
    return out_dir
