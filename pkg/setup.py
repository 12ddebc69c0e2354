from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
    import numpy as np

    ext_modules = cythonize(
        [
            Extension(
                "krein_clifford._blade_cy",
                ["src/krein_clifford/_blade_cy.pyx"],
                include_dirs=[np.get_include()],
            )
        ],
        language_level=3,
    )
except ImportError:
    # Pure-Python kernels are used when the compiled extension is unavailable.
    ext_modules = []

setup(ext_modules=ext_modules)
