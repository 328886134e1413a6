import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "jnrlab._kernels._eigh_cy",
                ["src/jnrlab/_kernels/_eigh_cy.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # No Cython: install pure-python only; the kernel package falls back at import.
    ext_modules = []

setup(ext_modules=ext_modules)
