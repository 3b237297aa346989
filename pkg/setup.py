import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # build without the compiled kernels
    cythonize = None

ext_modules = []
if cythonize is not None and os.environ.get("QUANDLELAB_NO_EXT") != "1":
    ext_modules = cythonize(
        [Extension("quandlelab._kernels", ["src/quandlelab/_kernels.pyx"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
