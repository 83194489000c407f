"""Kernel backend selection.

The compiled extension is preferred when importable; the pure-Python twin is
the fallback.  BERNAUDIT_BACKEND=python or =compiled forces a choice (forcing
"compiled" raises if the extension is missing, rather than silently degrading).
"""

import os

_forced = os.environ.get("BERNAUDIT_BACKEND", "").strip().lower()

if _forced == "python":
    from . import _kernels_py as kernels
elif _forced == "compiled":
    from . import _kernels as kernels  # ImportError here is deliberate
else:
    try:
        from . import _kernels as kernels
    except ImportError:
        from . import _kernels_py as kernels

BACKEND_NAME = kernels.BACKEND_NAME
