import sys

from setuptools import setup, find_packages

from runpy import run_path

if sys.version_info[0:2] < (3, 8):
    raise RuntimeError("Python version >= 3.8 required.")

# Get the long description from the relevant file
with open("README.rst") as file:
    long_description = file.read()
lines = long_description.splitlines(True)
long_description = "".join(lines[4:])

# Get the version from the relevant file
__version__ = run_path("solarmodel/_version.py")["__version__"]

# Get the development status from the version string
if "a" in __version__:
    devstatus = "Development Status :: 3 - Alpha"
elif "b" in __version__:
    devstatus = "Development Status :: 4 - Beta"
else:
    devstatus = "Development Status :: 5 - Production/Stable"

install_requires = ["fluiddyn >= 0.3.2", "numpy", "scipy", "mpmath"]

setup(
    name="solarmodel",
    version=__version__,
    description=(
        "Analytic model of the solar interior: closed-form mass, pressure, "
        "temperature and luminosity for the density law (1 - y^δ)^γ."
    ),
    long_description=long_description,
    keywords="Solar interior, stellar structure, hypergeometric functions",
    license="CeCILL-B",
    classifiers=[
        devstatus,
        "Intended Audience :: Science/Research",
        "Intended Audience :: Education",
        "Topic :: Scientific/Engineering :: Astronomy",
        "Topic :: Scientific/Engineering :: Physics",
        "License :: OSI Approved :: BSD License",
        # Actually CeCILL-B License (BSD compatible license for French laws,
        # see http://www.cecill.info/index.en.html
        #
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
    ],
    packages=find_packages(exclude=["doc", "examples"]),
    package_data={"solarmodel": ["data/*.csv"]},
    install_requires=install_requires,
    scripts=["bin/solarmodel_tables.py"],
    entry_points={"console_scripts": ["solarmodel = solarmodel.cli:main"]},
)
