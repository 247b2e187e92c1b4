"""Kernel selection.

The compiled extension is used when it imports; set ``WSEP_PURE=1`` to force
the pure-Python implementation.
"""

import os

from . import _reach_py

BACKEND = "python"
reach = _reach_py.reach

if os.environ.get("WSEP_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _reach as _compiled
    except ImportError:  # extension not built
        pass
    else:
        reach = _compiled.reach
        BACKEND = "cython"

reach_py = _reach_py.reach
