"""Kernel selection: the compiled module when importable, else the Python fallback.

Set ``BRAUER_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("BRAUER_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:  # extension not built
        _impl = _kernels_py

BACKEND = "compiled" if _impl is not _kernels_py else "python"
expand_level = _impl.expand_level
rewrite_neighbors = _impl.rewrite_neighbors
