"""Kernel selection: compiled extension when available, pure Python otherwise.

Set FFPLANES_PURE=1 in the environment to force the pure-Python kernels even
when the extension is built (used by the benchmark and for debugging).
"""

import os

from . import py_kernels

if os.environ.get("FFPLANES_PURE"):
    _impl = py_kernels
else:
    try:
        from . import _speedups as _impl
    except ImportError:
        _impl = py_kernels

IMPLEMENTATION = _impl.IMPLEMENTATION

dot_products = _impl.dot_products
distance_hist = _impl.distance_hist
trace_counts = _impl.trace_counts
orthogonal_scan = _impl.orthogonal_scan


def available_implementations():
    """Names of the kernel implementations importable in this environment."""
    names = [py_kernels.IMPLEMENTATION]
    try:
        from . import _speedups
    except ImportError:
        pass
    else:
        names.append(_speedups.IMPLEMENTATION)
    return names
