"""Network builders for the blending generator, critic, and latent generator.

All three builders return plain ``nn.Sequential`` stacks so that layer order
is open to inspection.  Widths, bottleneck size, and latent dimension come
from ``NetConfig``; the defaults are sized for CPU training runs.
"""

from dataclasses import dataclass

import torch
import torch.nn as nn


@dataclass(frozen=True)
class NetConfig:
    """Architecture knobs shared by the three networks.

    image_size: side of the square RGB input and output.
    channels:   encoder feature widths, one entry per stride-2 stage.
    bottleneck: width of the fully connected bottleneck in the blend generator.
    z_dim:      latent vector size for the unsupervised generator.
    """

    image_size: int = 64
    channels: tuple = (32, 64, 128)
    bottleneck: int = 256
    z_dim: int = 64

    def __post_init__(self):
        if self.image_size < 8:
            raise ValueError("image_size must be at least 8")
        if not self.channels or any(int(c) <= 0 for c in self.channels):
            raise ValueError("channels must be a non-empty tuple of positive ints")
        if self.image_size % (2 ** len(self.channels)) != 0:
            raise ValueError("image_size must be divisible by 2**len(channels)")
        if self.image_size // (2 ** len(self.channels)) < 2:
            raise ValueError("too many encoder stages for this image_size")
        if self.bottleneck <= 0:
            raise ValueError("bottleneck must be positive")
        if self.z_dim <= 0:
            raise ValueError("z_dim must be positive")
        # spatial side must reach 4 by repeated doubling for the latent decoder
        side = 4
        while side < self.image_size:
            side *= 2
        if side != self.image_size:
            raise ValueError("image_size must be 4 times a power of two")

    @property
    def encoded_side(self):
        return self.image_size // (2 ** len(self.channels))

    @property
    def encoded_numel(self):
        return self.channels[-1] * self.encoded_side * self.encoded_side


def _init_weights(module):
    if isinstance(module, (nn.Conv2d, nn.ConvTranspose2d, nn.Linear)):
        nn.init.normal_(module.weight, 0.0, 0.02)
        if module.bias is not None:
            nn.init.zeros_(module.bias)
    elif isinstance(module, nn.BatchNorm2d):
        nn.init.normal_(module.weight, 1.0, 0.02)
        nn.init.zeros_(module.bias)


def build_blend_generator(cfg):
    """Encoder, fully connected bottleneck, decoder; maps (B,3,S,S) in [0,1]
    to the same shape and range."""
    layers = []
    prev = 3
    for i, ch in enumerate(cfg.channels):
        layers.append(nn.Conv2d(prev, ch, 4, 2, 1))
        if i > 0:
            layers.append(nn.BatchNorm2d(ch))
        layers.append(nn.LeakyReLU(0.2))
        prev = ch
    layers.append(nn.Flatten())
    layers.append(nn.Linear(cfg.encoded_numel, cfg.bottleneck))
    layers.append(nn.LeakyReLU(0.2))
    layers.append(nn.Linear(cfg.bottleneck, cfg.encoded_numel))
    layers.append(nn.ReLU())
    layers.append(nn.Unflatten(1, (cfg.channels[-1], cfg.encoded_side, cfg.encoded_side)))
    widths = list(reversed(cfg.channels[:-1])) + [3]
    prev = cfg.channels[-1]
    for i, ch in enumerate(widths):
        layers.append(nn.ConvTranspose2d(prev, ch, 4, 2, 1))
        if i < len(widths) - 1:
            layers.append(nn.BatchNorm2d(ch))
            layers.append(nn.ReLU())
        prev = ch
    layers.append(nn.Sigmoid())
    net = nn.Sequential(*layers)
    net.apply(_init_weights)
    return net


def build_critic(cfg):
    """Score network: first layer conv with leaky ReLU only, middle layers
    add batch norm, final layer is a bare convolution to one channel."""
    layers = []
    prev = 3
    for i, ch in enumerate(cfg.channels):
        layers.append(nn.Conv2d(prev, ch, 4, 2, 1))
        if i > 0:
            layers.append(nn.BatchNorm2d(ch))
        layers.append(nn.LeakyReLU(0.2))
        prev = ch
    layers.append(nn.Conv2d(prev, 1, cfg.encoded_side))
    net = nn.Sequential(*layers)
    net.apply(_init_weights)
    return net


def build_unsup_generator(cfg):
    """Latent decoder: every transposed convolution is followed by batch norm
    and ReLU except the last, which feeds tanh.  Maps (B,z,1,1) to
    (B,3,S,S) in [-1,1]."""
    ups = 0
    side = 4
    while side < cfg.image_size:
        side *= 2
        ups += 1
    widths = list(reversed(cfg.channels))
    while len(widths) < ups:
        widths.append(max(8, widths[-1] // 2))
    widths = widths[:ups]
    layers = [nn.ConvTranspose2d(cfg.z_dim, widths[0], 4, 1, 0)]
    layers.append(nn.BatchNorm2d(widths[0]))
    layers.append(nn.ReLU())
    prev = widths[0]
    for ch in widths[1:]:
        layers.append(nn.ConvTranspose2d(prev, ch, 4, 2, 1))
        layers.append(nn.BatchNorm2d(ch))
        layers.append(nn.ReLU())
        prev = ch
    layers.append(nn.ConvTranspose2d(prev, 3, 4, 2, 1))
    layers.append(nn.Tanh())
    net = nn.Sequential(*layers)
    net.apply(_init_weights)
    return net


def critic_score(critic, images):
    """Mean critic output over a batch of images."""
    return critic(images).mean()


def sample_latent(cfg, batch, generator=None):
    """Standard normal latent batch shaped for the unsupervised generator."""
    return torch.randn(batch, cfg.z_dim, 1, 1, generator=generator)
