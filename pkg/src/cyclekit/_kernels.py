"""Kernel selection: compiled walk enumeration when built, pure Python otherwise.

Set CYCLEKIT_PURE=1 to force the pure-Python implementation (used by the
benchmark and by tests that compare the two).
"""

from __future__ import annotations

import os

from ._walks_py import WalkCapExceeded
from ._walks_py import enumerate_closed_walks as _enumerate_py

if os.environ.get("CYCLEKIT_PURE"):
    enumerate_closed_walks = _enumerate_py
    KERNEL = "python"
else:
    try:
        from ._walks_c import enumerate_closed_walks as _enumerate_c

        enumerate_closed_walks = _enumerate_c
        KERNEL = "compiled"
    except ImportError:
        enumerate_closed_walks = _enumerate_py
        KERNEL = "python"

__all__ = ["enumerate_closed_walks", "WalkCapExceeded", "KERNEL"]
