from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

sources = [
    "python/bindings.cpp",
    "src/rational.cpp",
    "src/coordinate.cpp",
    "src/expression.cpp",
    "src/form.cpp",
    "src/parser.cpp",
    "src/operators.cpp",
    "src/lagrangian.cpp",
    "src/recovery.cpp",
]

setup(
    ext_modules=[
        Pybind11Extension(
            "vbx",
            sources,
            include_dirs=["include"],
            libraries=["gmpxx", "gmp"],
            cxx_std=20,
        )
    ],
    cmdclass={"build_ext": build_ext},
)
