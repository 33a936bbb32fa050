"""Kernel selection: compiled extension when importable, else pure Python.

Set ``HCONTINUATION_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("HCONTINUATION_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND
all_minors = _impl.all_minors
bareiss_det = _impl.bareiss_det
combination_tables = _kernels_py.combination_tables
