"""Select the kernel backend at import time.

The compiled extension is preferred; the numpy fallback is used when the
extension is missing or when the environment variable FANOS_PURE_PYTHON is
set to a non-empty value other than "0".
"""

import os

_force_python = os.environ.get("FANOS_PURE_PYTHON", "") not in ("", "0")

if _force_python:
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]


def backend_name() -> str:
    """Name of the active kernel backend: "compiled" or "python"."""
    return kernels.BACKEND


__all__ = ["kernels", "backend_name"]
