import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("FANOINV_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("fanoinv._ckernel", ["src/fanoinv/_ckernel.pyx"], extra_compile_args=["-O2"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
