"""Build the optional Cython kernel.

    pip install -e . --no-build-isolation

If Cython or a C compiler is unavailable the package still installs and
falls back to the numpy implementation in ``gorsum._kernels_py``.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("GORSUM_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "gorsum._kernels",
                    ["src/gorsum/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except Exception as exc:  # pragma: no cover - build environment dependent
        print(f"gorsum: building without compiled kernel ({exc})")
        ext_modules = []

setup(ext_modules=ext_modules)
