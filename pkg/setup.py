import os

from setuptools import Extension, find_packages, setup

# The compiled kernel is optional: the package falls back to the pure-Python
# implementation in decrement._kernel._pykernel when the extension is absent.
# Set DECREMENT_NO_EXT=1 to skip building it entirely.
ext_modules = []
if os.environ.get("DECREMENT_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "decrement._kernel._ckernel",
                    ["src/decrement/_kernel/_ckernel.pyx"],
                    extra_compile_args=["-O3"],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

# Name, packages, and layout are duplicated here so that legacy
# `setup.py develop` installs (old pip/setuptools) handle the src layout;
# modern builds read pyproject.toml.
setup(
    name="decrement",
    version="0.1.0",
    package_dir={"": "src"},
    packages=find_packages("src"),
    entry_points={"console_scripts": ["decrement = decrement.cli:main"]},
    ext_modules=ext_modules,
)
