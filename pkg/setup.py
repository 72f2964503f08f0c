"""Build script for the optional compiled kernels.

The package is fully functional without the extension; ffplanes._core falls
back to the pure-Python kernels when ffplanes._core._speedups is missing.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "ffplanes._core._speedups",
                ["src/ffplanes/_core/_speedups.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
