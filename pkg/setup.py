"""Build hooks for the optional compiled kernel.

The package is fully functional without the extension; the import-time
backend selection in ``hexcurv._kernels`` falls back to the pure-Python
kernel when the compiled module is absent.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/hexcurv/_kernels/_core_cy.pyx",
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
