"""Build script for the optional compiled kernel extension.

The package works without the extension (a numpy fallback is selected at
import time), so a failed compile downgrades to a pure-Python install
instead of aborting.
"""

import sys

from setuptools import Extension, setup


def _extensions():
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError as exc:
        print(f"warning: building without compiled kernels ({exc})", file=sys.stderr)
        return []
    ext = Extension(
        "fanos._kernels",
        ["src/fanos/_kernels.pyx"],
        include_dirs=[np.get_include()],
        # No -ffast-math: the kernels rely on IEEE semantics (isfinite
        # divergence checks, reproducible rounding).
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=_extensions())
