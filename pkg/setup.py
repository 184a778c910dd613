"""Build script.

The compiled kernel (`wulffkit._kernels`) is optional: if Cython or a C
compiler is missing the package installs anyway and falls back to the NumPy
implementation selected at import time by `wulffkit.kernels`.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "wulffkit._kernels",
                ["src/wulffkit/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
