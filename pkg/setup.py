"""Build script; the compiled orbit kernel is optional.

If Cython or a C compiler is unavailable the install still succeeds and the
package falls back to the pure-Python kernel at import time.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "symcover._core._speedups",
                ["src/symcover/_core/_speedups.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover
    print(f"warning: building without compiled kernel ({exc})")

setup(ext_modules=ext_modules)
