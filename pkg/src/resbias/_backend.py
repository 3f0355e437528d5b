"""Kernel selection at import time.

The compiled extension is used when it was built; setting
``RESBIAS_PURE_PYTHON=1`` forces the NumPy fallback.
"""

import os

from resbias import _pykernels

BACKEND = "python"
kernels = _pykernels

if os.environ.get("RESBIAS_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from resbias import _ckernels
    except ImportError:
        pass
    else:
        kernels = _ckernels
        BACKEND = "cython"


def get_kernels(name=None):
    """Return a kernel module by name ("cython" or "python"), or the active one."""
    if name is None:
        return kernels
    if name == "python":
        return _pykernels
    if name == "cython":
        from resbias import _ckernels

        return _ckernels
    raise ValueError(f"unknown backend {name!r}")
