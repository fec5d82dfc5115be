from setuptools import setup

import sys

if sys.version_info < (3, 8):
    sys.exit("Sorry, Python < 3.8 is not supported")

import re

VERSIONFILE = "fanoverify/_version.py"
verstrline = open(VERSIONFILE, "rt").read()
VSRE = r"^__version__ = ['\"]([^'\"]*)['\"]"
mo = re.search(VSRE, verstrline, re.M)
if mo:
    verstr = mo.group(1)
else:
    raise RuntimeError("Unable to find version string in %s." % (VERSIONFILE,))

setup(
    name="fanoverify",
    version=verstr,
    description="Verification toolkit for codimension four Fano 3-fold constructions",
    long_description="Checks section tables, quasi-smoothness, baskets and primality witnesses of Fano 3-folds built as complete intersections in key varieties.",
    packages=["fanoverify"],
    package_data={
        "fanoverify": ["data/*.toml", "data/keys/*.toml", "data/classes/*.toml"]
    },
    entry_points={"console_scripts": ["fanoverify = fanoverify.main:main"]},
    include_package_data=True,
    install_requires=[
        "argcomplete >= 1.8.2",
        "colorama >= 0.3.7",
        "sympy >= 1.9",
        "toml >= 0.10.2",
        "tqdm >= 4.45.0",
    ],
    extras_require={"test": ["pytest >= 7.0"]},
)
