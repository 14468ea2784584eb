"""Latent-space search: find the code whose decoded texture best matches a
composite, as a training-free way to obtain a guide image."""

import dataclasses
import warnings

import numpy as np
import torch
from scipy.optimize import minimize

from .errors import OptimizerFailed


@dataclasses.dataclass(frozen=True)
class LatentSearchConfig:
    starts: int = 8
    max_iter: int = 200
    seed: int = 0
    z0: tuple = None

    def __post_init__(self):
        if self.starts < 1:
            raise ValueError("starts must be at least 1")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


@dataclasses.dataclass
class LatentSearchResult:
    z: np.ndarray
    loss: float
    guide: np.ndarray
    start_losses: list
    converged: bool


def _objective(generator, target, z_dim):
    def fun(z_flat):
        z = torch.tensor(z_flat, dtype=torch.float32).view(1, z_dim, 1, 1)
        z.requires_grad_(True)
        out = generator(z)
        loss = (out - target).pow(2).sum()
        loss.backward()
        grad = z.grad.detach().view(-1).numpy().astype(np.float64)
        return loss.detach().item(), grad

    return fun


def latent_search(generator, composite, cfg):
    """Minimise ||G(z) - composite||^2 over z with multi-start L-BFGS-B.

    composite is (3, S, S) with values in [0, 1]; internally it is mapped to
    the generator's tanh range.  The generator is switched to eval mode, so
    batch norm layers use their running statistics; targets rendered from a
    known code must be produced in eval mode too or they will not be
    recoverable.  The first start is cfg.z0 when given, the rest are standard
    normal draws from cfg.seed.  If no start converges an OptimizerFailed
    warning is issued and the best iterate is returned anyway.  The returned
    guide is (3, S, S) in [0, 1].
    """
    generator.eval()
    planes = np.asarray(composite, dtype=np.float64)
    if planes.ndim != 3 or planes.shape[0] != 3:
        raise ValueError(f"composite must be (3, S, S), got {planes.shape}")
    target = torch.from_numpy(planes * 2.0 - 1.0).float()
    z_dim = generator[0].in_channels
    fun = _objective(generator, target, z_dim)
    rng = np.random.default_rng(cfg.seed)
    starts = []
    if cfg.z0 is not None:
        z0 = np.asarray(cfg.z0, dtype=np.float64).ravel()
        if z0.size != z_dim:
            raise ValueError(f"z0 has {z0.size} entries, generator expects {z_dim}")
        starts.append(z0)
    while len(starts) < cfg.starts:
        starts.append(rng.standard_normal(z_dim))
    best = None
    start_losses = []
    converged = False
    for x0 in starts:
        res = minimize(fun, x0, jac=True, method="L-BFGS-B", options={"maxiter": cfg.max_iter})
        start_losses.append(float(res.fun))
        converged = converged or bool(res.success)
        if best is None or res.fun < best.fun:
            best = res
    if not converged:
        warnings.warn("no latent search start converged; returning best iterate", OptimizerFailed)
    with torch.no_grad():
        z = torch.tensor(best.x, dtype=torch.float32).view(1, z_dim, 1, 1)
        decoded = generator(z)[0]
    guide = ((decoded + 1.0) / 2.0).clamp(0.0, 1.0).numpy().astype(np.float64)
    return LatentSearchResult(
        z=best.x.copy(),
        loss=float(best.fun),
        guide=guide,
        start_losses=start_losses,
        converged=converged,
    )
