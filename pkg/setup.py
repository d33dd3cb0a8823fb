"""Build hook for the optional compiled kernel extension.

The package works without the extension (a pure-numpy mirror of the kernels
is selected at import time), so a missing compiler or Cython only costs speed.
"""

import os

from setuptools import setup

PYX = "src/fourierpos/_kernels/_hot.pyx"

ext_modules = []
if os.path.exists(PYX):
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "fourierpos._kernels._hot",
                    [PYX],
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
