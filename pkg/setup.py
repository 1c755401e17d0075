#!/usr/bin/python
# -*- coding: utf-8 -*-
#
#   unramified - exact unramified local factors for quadratic space pairs
#   Copyright (C) 2024 unramified contributors
#
#   This program is free software: you can redistribute it and/or modify
#   it under the terms of the GNU Lesser General Public License as published by
#   the Free Software Foundation, either version 3 of the License, or
#   (at your option) any later version.
#
#   This program is distributed in the hope that it will be useful,
#   but WITHOUT ANY WARRANTY; without even the implied warranty of
#   MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
#   GNU Lesser General Public License for more details.
#
#   You should have received a copy of the GNU Lesser General Public License
#   along with this program.  If not, see <http://www.gnu.org/licenses/>.

from setuptools import setup, find_packages

setup(
    name="unramified",
    version="0.1+git",
    description="exact unramified local factors for quadratic space pairs",
    long_description=open("README.rst").read(),
    author="unramified contributors",
    license="LGPLv3+",
    keywords=("automorphic forms local factor satake parameter "
              "whittaker bessel p-adic integral"),
    install_requires=[
        "numpy",
        "scipy",
        "pyyaml",
        "fastcache",
        "sympy",
    ],
    extras_require={},
    packages=find_packages(),
    test_suite="unramified.test",
    entry_points={
        "console_scripts": ["unramified = unramified.cli:main"],
    },
    classifiers=[f.strip() for f in """
        Development Status :: 3 - Alpha
        Intended Audience :: Science/Research
        License :: OSI Approved :: GNU Lesser General Public License v3 or later (LGPLv3+)
        Operating System :: OS Independent
        Programming Language :: Python :: 3
        Topic :: Scientific/Engineering :: Mathematics
    """.splitlines() if f.strip()],
)
