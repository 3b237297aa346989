"""Kernel selection: the compiled extension when it imports, else pure Python.

Set ``QUANDLELAB_PURE=1`` to force the fallback.
"""

import os

from . import _fallback

BACKEND = "python"
hlt_enumerate = _fallback.hlt_enumerate
rack_boundary_triplets = _fallback.rack_boundary_triplets

if os.environ.get("QUANDLELAB_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels
    except ImportError:  # extension not built
        pass
    else:
        BACKEND = "compiled"
        hlt_enumerate = _kernels.hlt_enumerate
        rack_boundary_triplets = _kernels.rack_boundary_triplets
