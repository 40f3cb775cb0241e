"""Pick the retraction search kernel at import time.

The compiled kernel is used when it was built and the polytope has at most
64 vertices.  Setting ``TORICGKM_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _retract_py

try:
    if os.environ.get("TORICGKM_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure Python kernel requested")
    from . import _retract_core
except ImportError:
    _retract_core = None

BACKEND = "cython" if _retract_core is not None else "python"


def search(face_masks, nverts, allowed=None, cap=0, budget=0):
    if _retract_core is not None and nverts <= _retract_core.MAX_VERTICES:
        return _retract_core.search(face_masks, nverts, allowed, cap, budget)
    return _retract_py.search(face_masks, nverts, allowed, cap, budget)
