"""Build script for the optional compiled stepping kernel.

The package is fully functional as pure Python.  When Cython and a C
compiler are available, ``zcgroups._speedups`` is built and picked up
automatically at import time.  Set ``ZCGROUPS_PURE=1`` to skip the
extension entirely.
"""
import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Fall back to the pure-Python package when compilation fails."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, broken toolchain, ...
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            "warning: compiled kernel not built (%s); "
            "using the pure-Python implementation" % (exc,)
        )


ext_modules = []
if not os.environ.get("ZCGROUPS_PURE"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("zcgroups._speedups", ["src/zcgroups/_speedups.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
