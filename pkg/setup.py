"""Build the optional compiled kernel; the package falls back to the pure
Python kernels when the extension is unavailable."""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "sympconn._kernel._fast",
                ["src/sympconn/_kernel/_fast.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
