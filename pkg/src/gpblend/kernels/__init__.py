"""Hot-loop kernels with a compiled core and a pure-numpy fallback.

The compiled extension is preferred; set ``GPBLEND_PURE_PYTHON=1`` to force
the numpy backend (or rely on the automatic fallback when the extension was
not built). Both backends implement the same five functions over float64
planes and agree bit-for-bit.
"""

import os

if os.environ.get("GPBLEND_PURE_PYTHON", "") not in ("", "0"):
    from . import _fallback as _impl

    BACKEND = "python"
else:
    try:
        from . import _native as _impl  # type: ignore[attr-defined]

        BACKEND = "native"
    except ImportError:
        from . import _fallback as _impl

        BACKEND = "python"

conv_sep_replicate = _impl.conv_sep_replicate
down2 = _impl.down2
up2 = _impl.up2
grad_forward = _impl.grad_forward
div_backward = _impl.div_backward

__all__ = [
    "BACKEND",
    "conv_sep_replicate",
    "down2",
    "up2",
    "grad_forward",
    "div_backward",
]
