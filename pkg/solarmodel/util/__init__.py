"""
Utilities
=========

Provides

.. autosummary::
   :toctree:

   summation
   userconfig

.. data:: logger

   The logger of the package (name ``"solarmodel"``).

"""

import logging
import sys

from fluiddyn.util import config_logging as _config_logging

logger = logging.getLogger("solarmodel")


def config_logging(level="info", file=None):
    """Configure the logger of the package (handler on stderr by default)."""
    if file is None:
        file = sys.stderr
    logger.handlers.clear()
    _config_logging(level, name="solarmodel", file=file)
    return logger
