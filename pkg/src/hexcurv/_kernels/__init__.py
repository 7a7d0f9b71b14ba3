"""Kernel backend selection.

Prefers the compiled extension when it importable; set HEXCURV_PURE_PYTHON=1
to force the pure-Python fallback (used by the benchmark and tests).
"""

import os

if os.environ.get("HEXCURV_PURE_PYTHON"):
    from . import _core_py as _backend
else:
    try:
        from . import _core_cy as _backend  # type: ignore[attr-defined]
    except ImportError:
        from . import _core_py as _backend

face_theta = _backend.face_theta
face_eval = _backend.face_eval

OK = _backend.OK
BAD_EDGE = _backend.BAD_EDGE
BAD_SPLIT = _backend.BAD_SPLIT
BAD_CENTER = _backend.BAD_CENTER
BAD_HEIGHT = _backend.BAD_HEIGHT
BAD_RANGE = _backend.BAD_RANGE
TIME = _backend.TIME
SPACE = _backend.SPACE
LIGHT = _backend.LIGHT

BACKEND = "compiled" if _backend.__name__.endswith("_core_cy") else "python"
