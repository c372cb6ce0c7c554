"""Build script: compiles the optional enumeration kernel.

The package is fully functional without the extension; latmin.kernel falls
back to the pure-Python twin when the compiled module is absent.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("latmin._kernel", ["src/latmin/_kernel.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
