"""Package Setup script for pbergman."""
import itertools
import os
import re

from setuptools import find_namespace_packages, setup


def _get_version():
  version_file = os.path.join(os.path.dirname(__file__),
                              'pbergman/__init__.py')
  with open(version_file, 'r') as fp:
    version_file_text = fp.read()

  version_match = re.search(
      r"^__version__ = ['\"]([^'\"]*)['\"]",
      version_file_text,
      re.M,
  )
  if version_match:
    return version_match.group(1)
  else:
    raise RuntimeError("Unable to find version string.")


NAME = "pbergman"
# VERSION = .... Change the version in pbergman/__init__.py

INSTALL_REQUIRES = [
    "absl-py>=0.10",
    "numpy>=1.20",
    "scipy>=1.7",
    "pandas>=1.3",
]

TESTS_REQUIRE = [
    "pytest", "hypothesis", "pylint", "pre-commit", "isort", "yapf"
]

EXTRAS_REQUIRE = {
    "test": TESTS_REQUIRE,
}
EXTRAS_REQUIRE["all"] = list(
    set(itertools.chain.from_iterable(list(EXTRAS_REQUIRE.values()))))

setup(
    name=NAME,
    version=_get_version(),
    description="Numerics for p-Bergman kernels, the p-Skwarczynski distance"
    " and the p-Bergman metric",
    author="The pbergman Authors",
    install_requires=INSTALL_REQUIRES,
    extras_require=EXTRAS_REQUIRE,
    tests_require=TESTS_REQUIRE,
    packages=find_namespace_packages(include=[
        "pbergman",
        "pbergman.*",
    ]),
    entry_points={
        "console_scripts": ["pbergman = pbergman.cli.main:run"],
    },
    classifiers=[
        "Intended Audience :: Education",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: Apache Software License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Topic :: Scientific/Engineering",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Software Development :: Libraries :: Python Modules",
    ],
    python_requires=">=3.8",
    include_package_data=True,
)
