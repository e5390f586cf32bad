import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = [
    Extension(
        "ipszeta.kernels._sweep",
        ["src/ipszeta/kernels/_sweep.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O3", "-fcx-limited-range", "-funroll-loops"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
]

# The extension is an accelerator only: ipszeta.kernels falls back to the
# numpy sweep when the compiled module is absent.
ext_modules = [] if cythonize is None else cythonize(
    extensions, compiler_directives={"language_level": "3"}
)

setup(ext_modules=ext_modules)
