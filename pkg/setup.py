"""Build script: compiles the optional Cython kernel extension.

Set SCHOLIVIEW_SKIP_EXT=1 to install without the compiled core; the
package then runs on the pure-Python kernel fallback.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("SCHOLIVIEW_SKIP_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "scholiview.kernels._ckernels",
                    ["src/scholiview/kernels/_ckernels.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            language_level="3",
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
