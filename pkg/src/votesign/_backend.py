"""Kernel selection: the compiled extension when importable, else the fallback.

Set ``VOTESIGN_PURE=1`` to force the fallback.
"""
import os

from . import _pykernels as python

compiled = None
if not os.environ.get("VOTESIGN_PURE"):
    try:
        from . import _kernels as compiled
    except ImportError:
        compiled = None

kernels = compiled if compiled is not None else python
BACKEND = "cython" if compiled is not None else "python"
