"""
Analytic solar interior
=======================

.. _solarmodel:
.. currentmodule:: solarmodel

The package :mod:`solarmodel` computes the structure of a star whose
density follows the law :math:`\\rho/\\rho_c = (1 - y^\\delta)^\\gamma`
with closed forms built on terminating hypergeometric series, and checks
them against direct numerical integration.

.. autosummary::
   :toctree: generated/

   specfun
   density
   structure
   energy
   calibrate
   oracle
   reference
   tables
   validation
   cli
   util

"""

from solarmodel._version import __version__
from solarmodel.density import ModelParams
from solarmodel.structure import SolarConstants
from solarmodel.energy import EnergyParams

__all__ = ["__version__", "ModelParams", "SolarConstants", "EnergyParams"]
