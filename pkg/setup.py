"""Build the optional compiled reachability kernel.

Installs without it when Cython or a C compiler is unavailable; the package
then falls back to ``wsep._reach_py``.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension
except ImportError:
    pass
else:
    ext_modules = cythonize(
        [Extension("wsep._reach", ["src/wsep/_reach.pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
