"""Build hook for the optional compiled recursion core.

The extension is optional: when Cython, a C++ compiler or GMP is missing the
build carries on and the package runs on its pure-Python engine.
"""

import os
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001 - any toolchain failure
            self._skip(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            self._skip(exc)

    @staticmethod
    def _skip(exc):
        sys.stderr.write(f"warning: compiled core not built ({exc}); using the pure-Python engine\n")


def extensions():
    if os.environ.get("WPMODULI_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    from setuptools import Extension

    ext = Extension(
        "wpmoduli.volumes._engine_ext",
        ["src/wpmoduli/volumes/_engine_ext.pyx"],
        language="c++",
        libraries=["gmp"],
        extra_compile_args=["-O2"],
    )
    try:
        return cythonize([ext], compiler_directives={"language_level": "3"}, quiet=True)
    except Exception as exc:  # noqa: BLE001
        OptionalBuildExt._skip(exc)
        return []


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
