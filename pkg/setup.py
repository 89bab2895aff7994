import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SPECHTLAB_NO_EXT", "") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("Cython not found; installing the pure-Python kernels only")
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "spechtlab._ext",
                    ["src/spechtlab/_ext.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
