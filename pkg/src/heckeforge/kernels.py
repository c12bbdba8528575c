"""Kernel selection: the compiled extension when importable, numpy otherwise.

Set ``HECKEFORGE_KERNEL=python`` to force the fallback.
"""
from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

MODE_T = _kernels_py.MODE_T
MODE_NABLA = _kernels_py.MODE_NABLA

# inputs above this bound are routed to the bigint path
INT64_SAFE = 1 << 60

_compiled = None
if os.environ.get("HECKEFORGE_KERNEL", "").lower() != "python":
    try:
        from . import _kernels as _compiled  # type: ignore[no-redef]
    except ImportError:  # pragma: no cover - depends on the build
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def apply_generator(ids, coef, tgt, up, mode, scratch, backend: str | None = None):
    """Dispatch one generator step; bigint (object) blocks always take the numpy path."""
    use = backend or BACKEND
    if use == "compiled" and _compiled is not None and coef.dtype == np.int64:
        if coef.size == 0 or int(np.abs(coef).max()) < INT64_SAFE:
            return _compiled.apply_generator(
                np.ascontiguousarray(ids, dtype=np.int64),
                np.ascontiguousarray(coef),
                np.ascontiguousarray(tgt, dtype=np.int64),
                np.ascontiguousarray(up, dtype=np.uint8),
                mode,
                scratch,
            )
        coef = coef.astype(object)
    elif coef.dtype == np.int64 and coef.size and int(np.abs(coef).max()) >= INT64_SAFE:
        coef = coef.astype(object)
    return _kernels_py.apply_generator(ids, coef, tgt, up, mode)
