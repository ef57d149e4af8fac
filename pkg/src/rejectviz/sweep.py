"""Kernel dispatch for the confusion threshold sweep.

At import time the compiled Cython kernel is selected when available;
otherwise the pure-Python reference loop is used. Setting the
environment variable ``REJECTVIZ_PURE_PYTHON=1`` forces the fallback
(useful for debugging and for the kernel benchmark).
"""

from __future__ import annotations

import os

import numpy as np

from . import _sweep_py

if os.environ.get("REJECTVIZ_PURE_PYTHON", "") not in ("", "0"):
    _impl = _sweep_py
    _BACKEND = "python"
else:
    try:
        from . import _sweep_cy as _impl

        _BACKEND = "compiled"
    except ImportError:
        _impl = _sweep_py
        _BACKEND = "python"


def backend() -> str:
    """Name of the active kernel backend: "compiled" or "python"."""
    return _BACKEND


def sweep_counts(true_idx, pred_idx, certainty, num_classes: int):
    """Validated front end to the active kernel.

    See ``rejectviz._sweep_py.sweep_counts`` for the output contract.
    Raises ValueError on malformed input; the kernels themselves do not
    re-check (the compiled one indexes with bounds checks disabled).
    """
    ti = np.ascontiguousarray(true_idx, dtype=np.int64)
    pi = np.ascontiguousarray(pred_idx, dtype=np.int64)
    cert = np.ascontiguousarray(certainty, dtype=np.float64)
    if ti.ndim != 1 or ti.shape != pi.shape or ti.shape != cert.shape:
        raise ValueError("true_idx, pred_idx and certainty must be equal-length 1-d arrays")
    if ti.size == 0:
        raise ValueError("empty prediction set")
    if num_classes < 1:
        raise ValueError(f"num_classes must be >= 1, got {num_classes}")
    if ti.min() < 0 or ti.max() >= num_classes or pi.min() < 0 or pi.max() >= num_classes:
        raise ValueError("class indices out of range")
    if not np.all(np.isfinite(cert)) or cert.min() < 0:
        raise ValueError("certainties must be finite and non-negative")
    return _impl.sweep_counts(ti, pi, cert, num_classes)
