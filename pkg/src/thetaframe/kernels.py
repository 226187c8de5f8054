"""Backend selection for the Gaussian lattice sum.

The compiled kernel is used when it imports; setting ``THETAFRAME_PURE=1``
forces the numpy fallback.
"""
import os

from . import _pykernels

BACKEND = "python"
lattice_sum = _pykernels.lattice_sum

if os.environ.get("THETAFRAME_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        lattice_sum = _ckernels.lattice_sum
        BACKEND = "cython"

__all__ = ["BACKEND", "lattice_sum"]
