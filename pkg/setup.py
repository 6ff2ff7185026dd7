"""Build script: compiles the optional integer convolution kernel.

The package is fully functional without the extension (a pure-Python
fallback is selected at import time); set SUMSETLAB_NO_EXT=1 to skip
the compile step entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SUMSETLAB_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "sumsetlab._kernel",
                    ["src/sumsetlab/_kernel.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level="3",
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
