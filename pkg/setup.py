"""Build script: compiles the optional Cython kernel when possible.

The package is pure Python by default; if Cython and a C compiler are
available, the hot linear-algebra loops in ``wreathq._kernel`` are
compiled and picked up automatically at import.  Set WREATHQ_NO_EXT=1 to
skip the extension entirely.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("WREATHQ_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("wreathq._kernel", ["src/wreathq/_kernel.pyx"],
                       extra_compile_args=["-O2"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
