"""Build script: compiles the optional backtracking-search extension.

The package works without the extension (a pure-Python fallback is selected
at import time), so compilation failures are demoted to a warning.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/radolab/_backtrack.pyx"],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    print(f"warning: skipping compiled kernel ({exc})", file=sys.stderr)

setup(ext_modules=ext_modules)
