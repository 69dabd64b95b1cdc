# -*- coding: utf-8 -*-
#
# License: LGPL version 3.0 - see LICENSE.txt for details
#
"""
Setup script for PyLYZEC library.
"""
import shutil
import runpy
import pathlib

from setuptools import setup, find_packages
from setuptools import Command


SCRIPT_NAME = 'lyprobe'
LIB_NAME = 'pylyzec'

SETUP_DIR = pathlib.Path(__file__).resolve().parent

# directories and file patterns removed by 'python setup.py clean'
CLEAN_DIRS = ('build', 'dist', 'docs/build', '.pytest_cache', '.hypothesis',
              LIB_NAME + '.egg-info')
CLEAN_PATTERNS = ('*.pyc', '*.pyo')


class CleanCommand(Command):
    """Removes build output, caches and compiled files."""
    description = "removes build/dist directories and test caches"
    user_options = []

    def initialize_options(self):
        pass

    def finalize_options(self):
        pass

    def run(self):
        for name in CLEAN_DIRS:
            target = SETUP_DIR / name
            if target.is_dir():
                shutil.rmtree(str(target))
                print("  removed:", target)
        for pattern in CLEAN_PATTERNS:
            for compiled in SETUP_DIR.rglob(pattern):
                compiled.unlink()
        print("Done.")


version_vars = runpy.run_path(str(SETUP_DIR / LIB_NAME / '__init__.py'))

setup(
    name=LIB_NAME,
    version=version_vars['__version__'],
    description=
    'PyLYZEC - Lee-Yang zeros of spin baths and probe spin correlators',
    long_description=(SETUP_DIR / 'README.md').read_text(encoding='utf-8'),
    long_description_content_type='text/markdown',
    license="GNU Lesser General Public License version 3 or later(LGPLv3)",
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: GNU Lesser General Public License v3 or later (LGPLv3+)',
        'Programming Language :: Python :: 3 :: Only',
        'Topic :: Scientific/Engineering :: Physics',
        ],
    packages=find_packages(exclude=['tests', 'tests.*']),
    py_modules=[SCRIPT_NAME],
    python_requires='>=3.8',
    install_requires=['numpy>=1.20', 'scipy>=1.6'],
    extras_require={
        'test': ['pytest>=7', 'hypothesis>=6'],
        'docs': ['sphinx>=4'],
    },
    entry_points={
        'console_scripts': [SCRIPT_NAME + ' = ' + LIB_NAME + '.cli:main'],
    },
    cmdclass={'clean': CleanCommand},
)
