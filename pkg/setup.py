"""Build script: compiles the optional Cython kernel.

The package works without the extension (bernaudit._backend falls back to
the pure-Python twin), so a missing compiler or Cython only costs speed.
Set BERNAUDIT_PURE=1 to skip the extension build entirely.
"""

import os
import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the extension if possible; degrade to pure Python otherwise."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            warnings.warn(f"skipping compiled kernel ({exc}); using pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"skipping {ext.name} ({exc}); using pure-Python fallback")


ext_modules = []
if os.environ.get("BERNAUDIT_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "bernaudit._kernels",
                    ["src/bernaudit/_kernels.pyx"],
                    # -ffp-contract=off keeps the compiled arithmetic
                    # bit-compatible with the pure fallback (no FMA fusing).
                    extra_compile_args=["-O2", "-ffp-contract=off"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
