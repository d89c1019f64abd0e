"""Setup configuration for the survnet package.

Kept for editable installs with older tooling; pyproject.toml is the primary
manifest.

Path: setup.py
"""

from setuptools import setup, find_packages
import os

# Read version from package __init__.py
version = None
init_path = os.path.join('survnet', '__init__.py')
with open(init_path, 'r', encoding="utf-8") as f:
    for line in f:
        if line.startswith('__version__'):
            version = line.split('=')[1].strip().strip('"').strip("'")
            break

if version is None:
    raise RuntimeError('Version information not found')

with open('README.md', 'r', encoding='utf-8') as f:
    long_description = f.read()

setup(
    name="survnet",
    version=version,
    description="Discrete-time survival modelling with feed-forward neural networks",
    long_description=long_description,
    long_description_content_type="text/markdown",

    packages=find_packages(exclude=['tests*', 'docs*', 'examples*']),
    package_data={"survnet": ["schemas/*.json"]},
    entry_points={"console_scripts": ["survnet = survnet.cli:main"]},

    install_requires=[
        "pydantic>=2.0.0",
        "numpy>=1.24",
        "pandas>=2.0",
    ],

    extras_require={
        "dev": [
            "pytest>=7.0.0",
            "pytest-cov>=4.0.0",
            "black>=23.0.0",
            "isort>=5.10.1",
        ]
    },

    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.10",
        "Topic :: Scientific/Engineering :: Medical Science Apps.",
    ],

    python_requires=">=3.10",
)
