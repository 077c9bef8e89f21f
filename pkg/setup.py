from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "kpplab._kernels_cy",
        ["src/kpplab/_kernels_cy.pyx"],
        extra_compile_args=["-O3"],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )
)
