"""Build hook for the optional compiled kernels.

The extension is optional: if Cython or a C compiler is missing the
package installs with the pure-Python fallback only.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("delzant._kernels", ["src/delzant/_kernels.pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
