"""Backend selection for the hot kernels.

The compiled extension is used when it was built; otherwise (or when
``LINEACT_PURE_PYTHON=1`` is set) the pure-Python module is loaded.  Both
expose ``pl_eval``, ``pl_eval_many``, ``orbit_closure`` and ``word_levels``.
"""
import os

from . import _kernels_py

if os.environ.get("LINEACT_PURE_PYTHON") == "1":
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

pl_eval = _impl.pl_eval
pl_eval_many = _impl.pl_eval_many
orbit_closure = _impl.orbit_closure
word_levels = _impl.word_levels

__all__ = ["BACKEND", "pl_eval", "pl_eval_many", "orbit_closure", "word_levels"]
