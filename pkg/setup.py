import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # Pure-python fallback kernels are used when the extension is absent.
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "graphsal.kernels._native",
                ["src/graphsal/kernels/_native.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
