from setuptools import setup, Extension

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; the reference kernel is used
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("projram.groebner._ckernel", ["src/projram/groebner/_ckernel.pyx"],
                   extra_compile_args=["-O3"])],
        language_level=3,
    )

setup(ext_modules=ext_modules)
