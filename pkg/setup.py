"""Build script: compiles the optional Cython search kernel.

The package is fully functional without the extension (a pure-Python twin of
every kernel lives in ``abmirror.kernels.pure``); if Cython or a C compiler is
unavailable the build silently falls back to pure-Python-only.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "abmirror.kernels._fast",
                ["src/abmirror/kernels/_fast.pyx"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)
