"""Select the sparse elimination backend.

The compiled ``prg._elim`` extension is used when it was built; otherwise the
pure-Python ``prg._elim_py`` is used.  Set ``PRG_PURE_PYTHON=1`` to force the
fallback.  Both expose the same ``SparseEliminator`` class and ``scan_word``.
"""
import os

from . import _elim_py

if os.environ.get("PRG_PURE_PYTHON"):
    _impl = _elim_py
else:
    try:
        from . import _elim as _impl
    except ImportError:
        _impl = _elim_py

SparseEliminator = _impl.SparseEliminator
scan_word = _impl.scan_word
BACKEND: str = _impl.BACKEND
PySparseEliminator = _elim_py.SparseEliminator


def available_backends() -> dict:
    out = {"python": _elim_py.SparseEliminator}
    try:
        from . import _elim
    except ImportError:
        pass
    else:
        out["cython"] = _elim.SparseEliminator
    return out
