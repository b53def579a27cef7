#!/usr/bin/env python3

from setuptools import setup, find_packages

setup(
    name = "schmidtools",
    version = "1.0",
    packages = find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    install_requires = ["numpy", "pandas", "sympy"],
    extras_require = {"test": ["pytest"]},
    entry_points = {"console_scripts": ["schmidtools=schmidtools.cli:main"]}
    )
