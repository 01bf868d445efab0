"""Build script: compiles the optional Cython kernel.

The package works without the extension (a pure-Python fallback is
selected at import time), so any build failure here is non-fatal.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/divherm/_mulmod.pyx"],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    print("divherm: skipping Cython kernel (%s); pure-Python fallback will be used" % exc)

setup(ext_modules=ext_modules)
