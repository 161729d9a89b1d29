import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = [
    Extension(
        "phipairs._sieve_core",
        ["src/phipairs/_sieve_core.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O3"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
]

# Without Cython the package still installs; the pure-numpy kernels are
# selected at import time.
setup(
    ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"})
    if cythonize
    else [],
)
