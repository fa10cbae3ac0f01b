import os

import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "fungal._kernel",
        ["src/fungal/_kernel.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O3"],
        language="c++",
    )
]

# FUNGAL_NO_EXT=1 installs the pure-Python fallback only
setup(
    ext_modules=[] if os.environ.get("FUNGAL_NO_EXT") else cythonize(
        extensions, compiler_directives={"language_level": "3"}
    )
)
