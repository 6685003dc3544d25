from Cython.Build import cythonize
from setuptools import Extension, setup

setup(
    ext_modules=cythonize(
        [Extension("gridfloer._ckernels", ["src/gridfloer/_ckernels.pyx"], extra_compile_args=["-O3"])],
        language_level=3,
    ),
)
