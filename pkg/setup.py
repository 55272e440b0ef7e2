from setuptools import Extension, setup

# The compiled walk-enumeration kernel is optional: the package falls back to
# the pure-Python twin in cyclekit/_walks_py.py when the extension is absent.
ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "cyclekit._walks_c",
                ["src/cyclekit/_walks_c.pyx"],
                optional=True,
            )
        ],
        language_level="3",
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
