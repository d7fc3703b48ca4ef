"""Build script for the optional compiled kernel core.

The package is fully functional without the extension: ``bvis._kernels``
falls back to numpy implementations when ``bvis._kernels._core`` is not
importable.  Any failure here (missing Cython, missing compiler) downgrades
to a pure build instead of aborting the install.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "bvis._kernels._core",
                ["src/bvis/_kernels/_core.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"bvis: skipping compiled kernels ({exc}); numpy fallback will be used")

setup(ext_modules=ext_modules)
