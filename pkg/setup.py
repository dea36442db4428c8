"""Build the optional Cython kernels; a failed build falls back to pure Python."""

import logging

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

log = logging.getLogger(__name__)


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # no compiler, no Cython, ...
            log.warning("lojparam: compiled kernels not built (%s); using pure Python", exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            log.warning("lojparam: failed to build %s (%s)", ext.name, exc)


try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "lojparam._ckernels",
                ["src/lojparam/_ckernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
