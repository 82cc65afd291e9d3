"""Build script: compiles the optional Cython kernel extension.

The package works without it (a numpy/scipy fallback is selected at
import), so the extension is marked optional and a failed compile only
downgrades to the fallback.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext = Extension(
        "coopetition._kernels._speedups",
        ["src/coopetition/_kernels/_speedups.pyx"],
        extra_compile_args=["-O3"],
    )
    ext.optional = True
    ext_modules = cythonize(ext, compiler_directives={"language_level": "3"})

setup(ext_modules=ext_modules)
