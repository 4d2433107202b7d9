from setuptools import Extension, setup

# The compiled kernels are optional: the package falls back to the pure-Python
# implementations in dpinv._kernels_py when the extension is unavailable.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("dpinv._kernels_cy", ["src/dpinv/_kernels_cy.pyx"])],
        language_level="3",
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
