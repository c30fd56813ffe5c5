"""Select the simplex kernel at import time.

The compiled kernel is used when it was built; otherwise, or when the
environment variable ``CONVEXPREV_PURE_PYTHON`` is set to a non-empty
value, the pure-Python kernel is used.
"""

import os

from . import _pivot_py

try:
    from . import _pivot as _compiled
except ImportError:  # extension not built
    _compiled = None

KERNELS = {"python": _pivot_py}
if _compiled is not None:
    KERNELS["compiled"] = _compiled

if os.environ.get("CONVEXPREV_PURE_PYTHON") or _compiled is None:
    DEFAULT = "python"
else:
    DEFAULT = "compiled"


def get_kernel(name=None):
    name = name or DEFAULT
    try:
        return KERNELS[name]
    except KeyError:
        raise ValueError(f"kernel {name!r} unavailable; have {sorted(KERNELS)}") from None
