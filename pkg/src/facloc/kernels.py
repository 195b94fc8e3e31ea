"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
module. Set ``FACLOC_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

_ckernels = None
if os.environ.get("FACLOC_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels
    except ImportError:  # extension not built
        _ckernels = None

_impl = _ckernels if _ckernels is not None else _pykernels

BACKEND = "cython" if _ckernels is not None else "python"

mec_shuffled = _impl.mec_shuffled
max_cost = _impl.max_cost
mean_distance = _impl.mean_distance


def backends():
    """Return ``{name: module}`` for every importable backend."""
    found = {"python": _pykernels}
    try:
        from . import _ckernels as compiled
    except ImportError:
        return found
    found["cython"] = compiled
    return found
