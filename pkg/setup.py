"""Build script: compiles the optional Cython stencil kernel.

The package works without the extension (a NumPy fallback is selected at
import time), so any build failure here downgrades to a pure-Python install
instead of aborting.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize
    import numpy

    ext_modules = cythonize(
        [
            Extension(
                "fluxsim._stencil",
                ["src/fluxsim/_stencil.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"fluxsim: skipping Cython extension build ({exc!r}); "
          "the NumPy fallback kernel will be used")

setup(ext_modules=ext_modules)
