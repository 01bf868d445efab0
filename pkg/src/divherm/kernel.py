"""Kernel selection: compiled extension if available, else pure Python.

Set the environment variable DIVHERM_PURE=1 to force the fallback (used
by the benchmark to compare both implementations).
"""

import os

if os.environ.get("DIVHERM_PURE") == "1":
    from . import _mulmod_py as _impl
else:
    try:
        from . import _mulmod as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _mulmod_py as _impl

BACKEND = _impl.BACKEND
mulmod = _impl.mulmod
addmul = _impl.addmul
