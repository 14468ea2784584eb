"""Pure-numpy kernels, the reference backend.

Each function mirrors its compiled twin in ``_native`` tap-for-tap (same
accumulation order), so the two backends produce bit-identical planes.
All planes are C-contiguous float64.
"""

import numpy as np


def _pad_replicate_1d(n: int, r: int) -> np.ndarray:
    # index row of length n + 2r: clamp(-r..n+r-1) into [0, n)
    return np.clip(np.arange(-r, n + r), 0, n - 1)


def conv_sep_replicate(plane: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    """Separable same-size correlation with edge-replicate padding.

    Horizontal pass then vertical pass; taps accumulate left to right.
    """
    h, w = plane.shape
    r = len(kernel) // 2
    idx = _pad_replicate_1d(w, r)
    padded = plane[:, idx]
    tmp = np.zeros((h, w))
    for t in range(2 * r + 1):
        tmp += kernel[t] * padded[:, t : t + w]
    idy = _pad_replicate_1d(h, r)
    padded = tmp[idy, :]
    out = np.zeros((h, w))
    for t in range(2 * r + 1):
        out += kernel[t] * padded[t : t + h, :]
    return out


def down2(plane: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    """Blur with `kernel` (replicate borders) and keep every second pixel."""
    return np.ascontiguousarray(conv_sep_replicate(plane, kernel)[::2, ::2])


def _zero_insert_line_idx(n_coarse: int, n_fine: int, r: int):
    # fine-position row u in [-r, n_fine + r): even u reads coarse[clamp(u//2)],
    # odd u is a structural zero. Replication happens in the coarse domain.
    u = np.arange(-r, n_fine + r)
    src = np.clip(u // 2, 0, n_coarse - 1)
    zero = (u % 2) != 0
    return src, zero


def _up1d(arr: np.ndarray, n_fine: int, kernel: np.ndarray, axis: int) -> np.ndarray:
    r = len(kernel) // 2
    n_coarse = arr.shape[axis]
    src, zero = _zero_insert_line_idx(n_coarse, n_fine, r)
    z = np.take(arr, src, axis=axis)
    sl = [slice(None)] * arr.ndim
    sl[axis] = zero
    z[tuple(sl)] = 0.0
    shape = list(arr.shape)
    shape[axis] = n_fine
    out = np.zeros(shape)
    for t in range(2 * r + 1):
        sl[axis] = slice(t, t + n_fine)
        out += kernel[t] * z[tuple(sl)]
    return out


def up2(plane: np.ndarray, out_h: int, out_w: int, kernel: np.ndarray) -> np.ndarray:
    """Zero-insert to (out_h, out_w) and blur with the doubled kernel.

    Vertical pass then horizontal pass, matching the compiled kernel.
    """
    tall = _up1d(plane, out_h, kernel, axis=0)
    return np.ascontiguousarray(_up1d(tall, out_w, kernel, axis=1))


def grad_forward(plane: np.ndarray):
    """Forward differences with circular wrap; returns (gx, gy)."""
    gx = np.roll(plane, -1, axis=1) - plane
    gy = np.roll(plane, -1, axis=0) - plane
    return np.ascontiguousarray(gx), np.ascontiguousarray(gy)


def div_backward(gx: np.ndarray, gy: np.ndarray) -> np.ndarray:
    """Backward-difference divergence with circular wrap (adjoint of grad)."""
    dx = gx - np.roll(gx, 1, axis=1)
    dy = gy - np.roll(gy, 1, axis=0)
    return np.ascontiguousarray(dx + dy)
