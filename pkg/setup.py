"""Build script: compiles the optional Cython speedups.

The package is fully functional without the extension (a pure-Python
twin is selected at import time), so any build failure here downgrades
to a pure install instead of aborting.
"""

import logging

from setuptools import Extension, setup

log = logging.getLogger(__name__)


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        log.warning("Cython not available; installing without compiled speedups")
        return []
    ext = Extension(
        "wikilink._core._speedups",
        ["src/wikilink/_core/_speedups.pyx"],
        language="c++",
        extra_compile_args=["-O3", "-std=c++11"],
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=_extensions())
