#!/usr/bin/env python3
"""
Setup script for symstab - stability of symmetric powers of rank-2 bundles.
"""

from setuptools import setup, find_packages

# Get version from __init__.py
VERSION = '0.1.0'
try:
    with open('src/symstab/__init__.py', 'r') as f:
        for line in f:
            if line.startswith('__version__'):
                VERSION = line.strip().split('=')[1].strip(" '\"")
                break
except FileNotFoundError:
    pass

requirements = [
    'numpy>=1.18.0; python_version<"3.10"',
    'numpy>=1.21.0; python_version>="3.10"',
    'pydantic>=2.0,<3.0',
]

# Read README for long description
try:
    with open('README.md', 'r', encoding='utf-8') as f:
        long_description = f.read()
except FileNotFoundError:
    long_description = 'Stability of symmetric powers of rank-2 bundles on curves'

setup(
    name='symstab',
    version=VERSION,
    description='Exact stability bookkeeping for symmetric powers of rank-2 bundles on curves',
    long_description=long_description,
    long_description_content_type='text/markdown',
    author='mk0dz',
    url='https://github.com/mk0dz/symstab',
    package_dir={'': 'src'},
    packages=find_packages(where='src'),
    install_requires=requirements,
    extras_require={
        'dev': ['pytest>=6.0.0', 'hypothesis>=6.0', 'black>=21.5b2', 'isort>=5.0.0', 'mypy>=0.7'],
    },
    entry_points={
        'console_scripts': ['symstab=symstab.cli:main'],
    },
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    python_requires='>=3.8',
    keywords='algebraic-geometry, vector-bundles, stability, prym',
)
