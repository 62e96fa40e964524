"""Build script for the optional compiled warp/flow kernels.

The package works without the extension (a vectorized numpy fallback is
selected at import time); the Cython module just makes the per-pixel
block-matching and bilinear-warp loops fast on larger frames.
"""

import numpy
from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "vidode._kernels._warp_cy",
        ["src/vidode/_kernels/_warp_cy.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O3"],
        optional=True,
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )
)
