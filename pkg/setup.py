"""
Setup script for ``magnonqed-py``
"""

from os.path import dirname, join
from setuptools import setup, find_packages


def readme():
    """Generate the README file of the package"""
    filepath = join(dirname(__file__), 'README.rst')
    with open(filepath) as file_readme:
        return file_readme.read()


setup(
    name='magnonqed-py',
    version='1.0.0',
    description="Simulations of a hybrid qubit-photon-magnon cavity",
    long_description=readme(),
    packages=find_packages(exclude=('tests', 'tests.*')),
    install_requires=[
        'numpy',
        'scipy',
    ],
    extras_require={
        'test': ['pytest'],
    },
    package_data={
        'magnonqed': ['assets/*.json'],
    },
    include_package_data=True,
    entry_points={
        'console_scripts': [
            'magnonqed=magnonqed.cli:main',
        ],
    },
    keywords='cavity qed magnon qubit entanglement lindblad',
    license='Apache-2.0',
    classifiers=[
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Topic :: Scientific/Engineering :: Physics',
    ],
    python_requires='>=3.8',
)
