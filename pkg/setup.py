"""Build script: compiles the optional move-expansion extension.

The package works without the extension (a pure-Python kernel is selected
at import time), so any Cython or compiler failure downgrades to a plain
build instead of aborting the install.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/knotfield/_fastmoves.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # noqa: BLE001
    print(f"knotfield: building without the compiled kernel ({exc})")

setup(ext_modules=ext_modules)
