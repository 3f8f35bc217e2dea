from os import path
import setuptools.command.build_py
from setuptools import setup, find_packages


class BuildPyCommand(setuptools.command.build_py.build_py):
    def run(self):
        setuptools.command.build_py.build_py.run(self)

# read the contents of README file
this_directory = path.abspath(path.dirname(__file__))
with open(path.join(this_directory, 'README.md'), encoding='utf-8') as f:
    long_description = f.read()

setup(
    name='easyqrand',

    version='0.1.0',
    cmdclass={'build_py': BuildPyCommand},

    description=('Library to build and numerically verify quantum algorithmic '
                 'randomness tests on finite qubit prefixes'),

    long_description=long_description,
    long_description_content_type='text/markdown',

    author='CCS',

    install_requires=open("requirements.txt", "r").readlines(),

    packages=find_packages(exclude=['tests']),

    entry_points={
        'console_scripts': ['easyqrand=easyqrand.cli:main'],
    },

    include_package_data=True,
)
