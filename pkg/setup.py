"""Build the optional Cython kernels; the package still works without them."""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("ANTISYM_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("antisym._kernels", ["src/antisym/_kernels.pyx"],
                       extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
