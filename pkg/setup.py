import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "doeforge.kernels._kernels_cy",
                ["src/doeforge/kernels/_kernels_cy.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
else:
    # No Cython at build time: install with the pure-python kernels only.
    ext_modules = []

setup(ext_modules=ext_modules)
