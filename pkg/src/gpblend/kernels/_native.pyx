# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the per-pixel hot loops.

Tap accumulation order matches ``_fallback`` exactly, so both backends
return bit-identical planes (modulo the sign of exact zeros).
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


cdef inline Py_ssize_t _clamp(Py_ssize_t i, Py_ssize_t n) noexcept nogil:
    if i < 0:
        return 0
    if i >= n:
        return n - 1
    return i


def conv_sep_replicate(const double[:, ::1] plane, const double[::1] kernel):
    """Separable same-size correlation with edge-replicate padding."""
    cdef Py_ssize_t h = plane.shape[0], w = plane.shape[1]
    cdef Py_ssize_t r = kernel.shape[0] // 2
    cdef Py_ssize_t taps = kernel.shape[0]
    tmp_arr = np.empty((h, w))
    out_arr = np.empty((h, w))
    cdef double[:, ::1] tmp = tmp_arr
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, t
    cdef double acc
    with nogil:
        for i in range(h):
            for j in range(w):
                acc = 0.0
                for t in range(taps):
                    acc += kernel[t] * plane[i, _clamp(j - r + t, w)]
                tmp[i, j] = acc
        for i in range(h):
            for j in range(w):
                acc = 0.0
                for t in range(taps):
                    acc += kernel[t] * tmp[_clamp(i - r + t, h), j]
                out[i, j] = acc
    return out_arr


def down2(const double[:, ::1] plane, const double[::1] kernel):
    """Blur with `kernel` (replicate borders) and keep every second pixel."""
    cdef Py_ssize_t h = plane.shape[0], w = plane.shape[1]
    cdef Py_ssize_t oh = (h + 1) // 2, ow = (w + 1) // 2
    cdef Py_ssize_t r = kernel.shape[0] // 2
    cdef Py_ssize_t taps = kernel.shape[0]
    tmp_arr = np.empty((h, ow))
    out_arr = np.empty((oh, ow))
    cdef double[:, ::1] tmp = tmp_arr
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, t
    cdef double acc
    with nogil:
        for i in range(h):
            for j in range(ow):
                acc = 0.0
                for t in range(taps):
                    acc += kernel[t] * plane[i, _clamp(2 * j - r + t, w)]
                tmp[i, j] = acc
        for i in range(oh):
            for j in range(ow):
                acc = 0.0
                for t in range(taps):
                    acc += kernel[t] * tmp[_clamp(2 * i - r + t, h), j]
                out[i, j] = acc
    return out_arr


def up2(const double[:, ::1] plane, Py_ssize_t out_h, Py_ssize_t out_w, const double[::1] kernel):
    """Zero-insert to (out_h, out_w) and blur with the doubled kernel.

    Even fine positions read the coarse pixel (replicated past the edges),
    odd ones are structural zeros; the blur never sees a padded zero border.
    """
    cdef Py_ssize_t h = plane.shape[0], w = plane.shape[1]
    cdef Py_ssize_t r = kernel.shape[0] // 2
    cdef Py_ssize_t taps = kernel.shape[0]
    tmp_arr = np.empty((out_h, w))
    out_arr = np.empty((out_h, out_w))
    cdef double[:, ::1] tmp = tmp_arr
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, t, u
    cdef double acc
    with nogil:
        for i in range(out_h):
            for j in range(w):
                acc = 0.0
                for t in range(taps):
                    u = i - r + t
                    if (u & 1) == 0:
                        acc += kernel[t] * plane[_clamp(u >> 1, h), j]
                tmp[i, j] = acc
        for i in range(out_h):
            for j in range(out_w):
                acc = 0.0
                for t in range(taps):
                    u = j - r + t
                    if (u & 1) == 0:
                        acc += kernel[t] * tmp[i, _clamp(u >> 1, w)]
                out[i, j] = acc
    return out_arr


def grad_forward(const double[:, ::1] plane):
    """Forward differences with circular wrap; returns (gx, gy)."""
    cdef Py_ssize_t h = plane.shape[0], w = plane.shape[1]
    gx_arr = np.empty((h, w))
    gy_arr = np.empty((h, w))
    cdef double[:, ::1] gx = gx_arr
    cdef double[:, ::1] gy = gy_arr
    cdef Py_ssize_t i, j, jn, im
    with nogil:
        for i in range(h):
            im = i + 1 if i + 1 < h else 0
            for j in range(w):
                jn = j + 1 if j + 1 < w else 0
                gx[i, j] = plane[i, jn] - plane[i, j]
                gy[i, j] = plane[im, j] - plane[i, j]
    return gx_arr, gy_arr


def div_backward(const double[:, ::1] gx, const double[:, ::1] gy):
    """Backward-difference divergence with circular wrap (adjoint of grad)."""
    cdef Py_ssize_t h = gx.shape[0], w = gx.shape[1]
    out_arr = np.empty((h, w))
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, jp, ip
    with nogil:
        for i in range(h):
            ip = i - 1 if i > 0 else h - 1
            for j in range(w):
                jp = j - 1 if j > 0 else w - 1
                out[i, j] = (gx[i, j] - gx[i, jp]) + (gy[i, j] - gy[ip, j])
    return out_arr
