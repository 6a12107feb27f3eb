import numpy
from setuptools import Extension, setup

# The LCS kernel is optional: the package falls back to the pure-Python
# implementation in refdecomp._lcs_fallback when the extension is missing.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "refdecomp._lcs",
                sources=["src/refdecomp/_lcs.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover
    print(f"skipping compiled LCS kernel: {exc}")
    ext_modules = []

setup(ext_modules=ext_modules)
