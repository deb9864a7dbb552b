from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "busybeaver.kernels._ckernel",
                ["src/busybeaver/kernels/_ckernel.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # The package still works without the compiled kernel; the pure-Python
    # backend is selected at import time.
    ext_modules = []

setup(ext_modules=ext_modules)
