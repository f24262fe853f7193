import os

from setuptools import Extension, setup

# The compiled kernels are optional: the package falls back to the pure
# Python implementations in hyperkernel.kernels.pure when the extension
# is absent.  Set HYPERKERNEL_PURE=1 to skip compilation entirely.
ext_modules = []
if os.environ.get("HYPERKERNEL_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("hyperkernel._ckernels", ["src/hyperkernel/_ckernels.pyx"])],
            language_level="3",
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
