from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "htype.kernels._core",
                ["src/htype/kernels/_core.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # No Cython toolchain: install pure-Python; the kernels package falls
    # back to the numpy implementation at import time.
    ext_modules = []

setup(ext_modules=ext_modules)
