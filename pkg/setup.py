import os
import re

import setuptools


def find_version():
    tld = os.path.abspath(os.path.dirname(__file__))
    filename = os.path.join(tld, 'gemkit', '__init__.py')
    with open(filename) as f:
        text = f.read()
    match = re.search(r"^__version__ = \"(.*)\"$", text, re.MULTILINE)
    if not match:
        raise RuntimeError('cannot find version')
    return match.group(1)


version = find_version()

with open('requirements.txt') as f:
    requirements = f.read().splitlines()

setuptools.setup(
    name='gemkit',
    version=version,
    scripts=['gemkit_cli'],
    python_requires='>=3.8',
    install_requires=requirements,
    extras_require={
        'dev': ['pytest'],
        'rapidjson': ['python-rapidjson>=0.4.1,<2.0'],
        'ujson': ['ujson>=2.0.0,<4.0.0'],
    },
    packages=setuptools.find_packages(include=('gemkit*',)),
    description='Gems of 4-manifolds from framed links and Kirby diagrams',
    license='MIT Licence',
    long_description='Builds 5-coloured graphs representing the 4-manifolds '
    'given by framed links and Kirby diagrams, with moves, invariants and checks',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        "Programming Language :: Python :: 3.8",
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
)
