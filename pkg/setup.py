"""Build script: compiles the optional kernel extension when Cython and a
C compiler are available; the package works without it (pure-Python
fallback is selected at import)."""

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Never let a missing compiler break the install."""

    def run(self):
        try:
            super().run()
        except Exception as e:
            print(f"skipping compiled kernels ({e}); using the pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as e:
            print(f"skipping {ext.name} ({e}); using the pure-Python fallback")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(["src/hflab/_kernels.pyx"], language_level="3")


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
