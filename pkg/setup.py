"""Build script: compiles the optional Cython scan kernel.

The package is fully functional without the extension; the pure numpy
backend is selected automatically at import when the compiled module is
missing (see pentaks._kernels).
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "pentaks._kernels._fast",
                ["src/pentaks/_kernels/_fast.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
