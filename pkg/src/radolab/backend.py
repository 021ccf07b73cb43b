"""Search-kernel backend selection.

The compiled extension is used when available; otherwise the pure-Python twin
takes over with identical semantics.  ``BACKEND`` names the active kernel.
"""

from . import _backtrack_py as _py_kernel

try:
    from . import _backtrack as _c_kernel
except ImportError:  # pragma: no cover - build environment dependent
    _c_kernel = None

FOUND = _py_kernel.FOUND
REFUTED = _py_kernel.REFUTED
EXHAUSTED = _py_kernel.EXHAUSTED

_kernel = _c_kernel if _c_kernel is not None else _py_kernel
BACKEND = "compiled" if _c_kernel is not None else "python"


def search(n, r, con_start, con_cnt, con_off, con_len, elems, budget,
           force_python: bool = False):
    kern = _py_kernel if force_python else _kernel
    return kern.search(n, r, con_start, con_cnt, con_off, con_len, elems, budget)
