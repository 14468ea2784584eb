"""Discrete gradient/divergence stencils and the two linear solvers.

Gradients are forward differences, divergence is the matching backward
difference, both with circular wrap, so div(grad(x)) is the 5-point circular
Laplacian and the adjointness identity <grad x, f> == -<x, div f> holds
exactly. The gradient-plus-color objective is minimized per channel in the
frequency domain where both symmetric stencils diagonalize; the masked
Dirichlet problem is solved by conjugate gradient on the interior unknowns.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    BetaNonPositive,
    DidNotConvergeWarning,
    DimensionMismatch,
    NoExterior,
)
from .image import ImageF, MaskImage, check_same_dims


@dataclass(frozen=True)
class VectorField:
    gx: np.ndarray  # (channels, height, width) forward differences along x
    gy: np.ndarray  # (channels, height, width) forward differences along y

    def __post_init__(self):
        gx = np.asarray(self.gx, dtype=np.float64)
        gy = np.asarray(self.gy, dtype=np.float64)
        if gx.ndim != 3 or gx.shape != gy.shape:
            raise DimensionMismatch(
                f"field planes disagree: {gx.shape} vs {gy.shape}"
            )
        object.__setattr__(self, "gx", gx)
        object.__setattr__(self, "gy", gy)

    @property
    def channels(self) -> int:
        return self.gx.shape[0]

    @property
    def height(self) -> int:
        return self.gx.shape[1]

    @property
    def width(self) -> int:
        return self.gx.shape[2]


@dataclass(frozen=True)
class GpParams:
    beta: float = 1.0
    gauss_kernel: tuple = (0.25, 0.5, 0.25)
    eps: float = 1e-12
    scales: object = "auto"  # "auto" or an explicit level count

    def __post_init__(self):
        # beta == 0 leaves the DC frequency undetermined.
        if not self.beta > 0.0:
            raise BetaNonPositive(f"beta must be positive, got {self.beta}")
        kern = tuple(float(v) for v in self.gauss_kernel)
        if len(kern) % 2 != 1:
            raise ValueError("gauss_kernel length must be odd")
        if any(v < 0.0 for v in kern):
            raise ValueError("gauss_kernel entries must be nonnegative")
        if abs(sum(kern) - 1.0) > 1e-9:
            raise ValueError("gauss_kernel must sum to 1")
        if kern != kern[::-1]:
            raise ValueError("gauss_kernel must be symmetric")
        object.__setattr__(self, "gauss_kernel", kern)
        if self.eps < 0.0:
            raise ValueError("eps must be nonnegative")
        if self.scales != "auto":
            if not isinstance(self.scales, int) or self.scales < 1:
                raise ValueError("scales must be 'auto' or a positive int")

    def kernel_array(self) -> np.ndarray:
        return np.asarray(self.gauss_kernel, dtype=np.float64)


def gradients(img: ImageF) -> VectorField:
    """Forward differences with circular wrap at the last row/column."""
    gx = np.empty_like(img.planes)
    gy = np.empty_like(img.planes)
    for c, plane in enumerate(img.planes):
        gx[c], gy[c] = kernels.grad_forward(plane)
    return VectorField(gx, gy)


def composite_field(src: ImageF, dst: ImageF, mask: MaskImage) -> VectorField:
    """Select src gradients where mask==1 and dst gradients elsewhere."""
    check_same_dims(src, dst, mask)
    if src.channels != dst.channels:
        raise DimensionMismatch(
            f"channel mismatch: {src.channels} vs {dst.channels}"
        )
    fs = gradients(src)
    fd = gradients(dst)
    pick = mask.data[None, :, :] == 1.0
    return VectorField(np.where(pick, fs.gx, fd.gx), np.where(pick, fs.gy, fd.gy))


def divergence(f: VectorField) -> ImageF:
    """Backward-difference divergence, the negative adjoint of gradients."""
    out = np.empty_like(f.gx)
    for c in range(f.channels):
        out[c] = kernels.div_backward(f.gx[c], f.gy[c])
    return ImageF._wrap(out)


def kernel_transfer(kern: np.ndarray, n: int) -> np.ndarray:
    """Real DFT transfer function of a symmetric odd-length 1-D stencil."""
    r = len(kern) // 2
    k = np.arange(n, dtype=np.float64)
    t = np.full(n, kern[r], dtype=np.float64)
    for tap in range(1, r + 1):
        t += 2.0 * kern[r + tap] * np.cos(2.0 * np.pi * tap * k / n)
    return t


def laplacian_transfer(height: int, width: int) -> np.ndarray:
    """Transfer function of the 5-point circular Laplacian on the rfft2 grid."""
    ly = 2.0 * np.cos(2.0 * np.pi * np.arange(height) / height) - 2.0
    lx = 2.0 * np.cos(2.0 * np.pi * np.arange(width) / width) - 2.0
    return ly[:, None] + lx[None, : width // 2 + 1]


def solve_gp(u: ImageF, guide: ImageF, params: GpParams) -> ImageF:
    """Minimize ||u - L x||^2 + beta ||G x - guide||^2 per channel.

    L is the 5-point circular Laplacian and G is circular separable
    convolution with params.gauss_kernel. Both diagonalize under the DFT,
    so each frequency solves independently:
    x = (L_hat u_hat + beta G_hat guide_hat) / (L_hat^2 + beta G_hat^2 + eps).
    The output is not clamped; clamping happens at save time.
    """
    check_same_dims(u, guide)
    if u.channels != guide.channels:
        raise DimensionMismatch(
            f"channel mismatch: {u.channels} vs {guide.channels}"
        )
    h, w = u.height, u.width
    kern = params.kernel_array()
    lap = laplacian_transfer(h, w)
    gy = kernel_transfer(kern, h)
    gx = kernel_transfer(kern, w)[: w // 2 + 1]
    gauss = gy[:, None] * gx[None, :]
    denom = lap * lap + params.beta * gauss * gauss + params.eps
    out = np.empty_like(u.planes)
    for c in range(u.channels):
        num = lap * np.fft.rfft2(u.planes[c]) + (
            params.beta * gauss * np.fft.rfft2(guide.planes[c])
        )
        out[c] = np.fft.irfft2(num / denom, s=(h, w))
    return ImageF._wrap(out)


def gauss_filter(img: ImageF, params: GpParams) -> ImageF:
    """Circular separable convolution with params.gauss_kernel (the G above)."""
    kern = params.kernel_array()
    h, w = img.height, img.width
    gy = kernel_transfer(kern, h)
    gx = kernel_transfer(kern, w)[: w // 2 + 1]
    gauss = gy[:, None] * gx[None, :]
    out = np.empty_like(img.planes)
    for c in range(img.channels):
        out[c] = np.fft.irfft2(gauss * np.fft.rfft2(img.planes[c]), s=(h, w))
    return ImageF._wrap(out)


def gp_objective(x: ImageF, u: ImageF, guide: ImageF, params: GpParams) -> float:
    """Evaluate ||u - L x||^2 + beta ||G x - guide||^2 directly."""
    lap_x = divergence(gradients(x))
    gx = gauss_filter(x, params)
    grad_term = float(np.sum((u.planes - lap_x.planes) ** 2))
    color_term = float(np.sum((gx.planes - guide.planes) ** 2))
    return grad_term + params.beta * color_term


def _neighbor_sum(plane: np.ndarray) -> np.ndarray:
    return (
        np.roll(plane, 1, axis=0)
        + np.roll(plane, -1, axis=0)
        + np.roll(plane, 1, axis=1)
        + np.roll(plane, -1, axis=1)
    )


def solve_poisson_dirichlet(
    u: ImageF,
    dst: ImageF,
    mask: MaskImage,
    tol: float = None,
    max_iter: int = None,
) -> ImageF:
    """Solve L x == u on the mask interior with x == dst on the exterior.

    L is the 5-point circular Laplacian. The interior system is solved by
    unpreconditioned conjugate gradient on the (negated, positive-definite)
    masked operator, warm-started at dst. tol is an absolute residual L2
    norm, defaulting to 1e-6 times the right-hand-side norm; max_iter
    defaults to 10x the unknown count. On non-convergence the best iterate
    is returned and DidNotConvergeWarning is issued.
    """
    check_same_dims(u, dst, mask)
    if u.channels != dst.channels:
        raise DimensionMismatch(
            f"channel mismatch: {u.channels} vs {dst.channels}"
        )
    if tol is not None and not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    inside = mask.data
    n_unknown = int(inside.sum())
    if n_unknown == inside.size:
        raise NoExterior("mask selects every pixel; no boundary values exist")
    if n_unknown == 0:
        return ImageF._wrap(dst.planes.copy())
    if max_iter is None:
        max_iter = 10 * n_unknown

    out = np.empty_like(dst.planes)
    for c in range(u.channels):
        out[c] = _cg_dirichlet(
            u.planes[c], dst.planes[c], inside, tol, max_iter
        )
    return ImageF._wrap(out)


def _cg_dirichlet(
    u: np.ndarray,
    dst: np.ndarray,
    inside: np.ndarray,
    tol: float,
    max_iter: int,
) -> np.ndarray:
    # Positive-definite form: A v = -(masked Laplacian of v), v zero outside.
    def apply_a(v):
        return -inside * (_neighbor_sum(v) - 4.0 * v)

    boundary = dst * (1.0 - inside)
    rhs = -inside * (u - (_neighbor_sum(boundary) - 4.0 * boundary))
    if tol is None:
        tol_abs = 1e-6 * float(np.linalg.norm(rhs))
    else:
        tol_abs = tol

    v = dst * inside
    r = rhs - apply_a(v)
    rs = float(np.sum(r * r))
    best = v.copy()
    best_norm = np.sqrt(rs)
    if best_norm <= tol_abs:
        return best + boundary
    p = r.copy()
    converged = False
    for _ in range(max_iter):
        ap = apply_a(p)
        alpha = rs / float(np.sum(p * ap))
        v = v + alpha * p
        r = r - alpha * ap
        rs_new = float(np.sum(r * r))
        rn = np.sqrt(rs_new)
        if rn < best_norm:
            best = v.copy()
            best_norm = rn
        if rn <= tol_abs:
            converged = True
            break
        p = r + (rs_new / rs) * p
        rs = rs_new
    if not converged:
        warnings.warn(
            f"conjugate gradient stopped at residual {best_norm:.3e} "
            f"(target {tol_abs:.3e}) after {max_iter} iterations",
            DidNotConvergeWarning,
        )
    return best + boundary
