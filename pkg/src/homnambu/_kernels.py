"""Backend selection for the row reduction kernel.

The compiled extension is preferred; set ``HOMNAMBU_PURE_PYTHON=1`` to force
the pure-Python fallback.
"""
import os

from . import _pykernels

BACKEND = "python"
echelon = _pykernels.echelon

if not os.environ.get("HOMNAMBU_PURE_PYTHON"):
    try:
        from . import _ckernels
    except ImportError:  # extension not built
        pass
    else:
        BACKEND = "cython"
        echelon = _ckernels.echelon

BACKENDS = {"python": _pykernels.echelon}
if BACKEND == "cython":
    BACKENDS["cython"] = echelon
