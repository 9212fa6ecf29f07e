"""Kernel selection.

The compiled kernel is used when it imports; ``PROJRAM_KERNEL=python``
forces the pure-Python reference kernel.
"""

from __future__ import annotations

import os

from . import _pykernel

try:
    from . import _ckernel
except ImportError:  # extension not built
    _ckernel = None

KERNELS = {"python": _pykernel.Kernel}
if _ckernel is not None:
    KERNELS["cython"] = _ckernel.Kernel


def default_kernel_name() -> str:
    forced = os.environ.get("PROJRAM_KERNEL")
    if forced:
        if forced not in KERNELS:
            raise RuntimeError(f"kernel {forced!r} unavailable; have {sorted(KERNELS)}")
        return forced
    return "cython" if "cython" in KERNELS else "python"


def get_kernel(name=None):
    return KERNELS[name or default_kernel_name()]


def available():
    return sorted(KERNELS)
