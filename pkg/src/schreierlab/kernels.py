"""Kernel dispatch: the compiled extension when importable, else pure Python.

Set ``SCHREIERLAB_PURE=1`` to force the fallback (used by the benchmark and
by the parity tests).
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("SCHREIERLAB_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels

assoc_violation = _impl.assoc_violation
enumerate_unital = _impl.enumerate_unital
hom_search = _impl.hom_search
closure = _impl.closure

__all__ = ["BACKEND", "assoc_violation", "enumerate_unital", "hom_search", "closure"]
