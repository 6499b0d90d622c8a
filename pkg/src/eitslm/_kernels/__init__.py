"""Hot-kernel backend selection.

Importing this package picks the compiled Cython core when available and
falls back to the NumPy implementations otherwise.  Set the environment
variable ``EITSLM_PURE_PYTHON=1`` before import to force the fallback (used
by the benchmark and by backend-equivalence tests).
"""

import os

from . import py_backend

_impl = py_backend
if not os.environ.get("EITSLM_PURE_PYTHON"):
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        pass

susceptibility_map = _impl.susceptibility_map
dft_points = _impl.dft_points
bilinear_sample = _impl.bilinear_sample


def backend_name() -> str:
    """'compiled' when the Cython core is active, 'python' otherwise."""
    return "python" if _impl is py_backend else "compiled"
