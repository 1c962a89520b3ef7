"""Kernel selection: compiled Cython kernels when built, pure Python otherwise.

Set ``ICOSA_PURE_PYTHON=1`` to force the fallback.
"""

import os

from ._ext import _pykernels as python_kernels

try:
    if os.environ.get("ICOSA_PURE_PYTHON"):
        raise ImportError("pure-Python kernels requested")
    from ._ext import _ckernels as compiled_kernels
except ImportError:
    compiled_kernels = None

backend = compiled_kernels if compiled_kernels is not None else python_kernels
BACKEND_NAME = "cython" if compiled_kernels is not None else "python"

count_points_fp = backend.count_points_fp
count_points_fp2 = backend.count_points_fp2
dirichlet_partial_sum = backend.dirichlet_partial_sum

__all__ = [
    "BACKEND_NAME",
    "compiled_kernels",
    "python_kernels",
    "count_points_fp",
    "count_points_fp2",
    "dirichlet_partial_sum",
]
