"""Build script for the optional compiled elimination kernel.

The package works without the extension: ``prg.kernel`` falls back to the
pure-Python implementation when ``prg._elim`` cannot be imported.
"""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("PRG_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("prg._elim", ["src/prg/_elim.pyx"], extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
        )

setup(ext_modules=ext_modules)
