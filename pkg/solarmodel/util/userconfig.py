"""User configuration (:mod:`solarmodel.util.userconfig`)
======================================================

Execute the user configuration files ``~/.solarmodel*.py`` if they exist
and gather the configuration values as module attributes.

Only the names of :class:`solarmodel.structure.SolarConstants` fields are
used by the package, for example::

    # ~/.solarmodel.py
    mu = 0.85
    G = 6.6743e-8

"""

from fluiddyn.util.userconfig import load_user_conf_files

config = load_user_conf_files("solarmodel")
del load_user_conf_files

glob = globals()
for _k, _v in config.items():
    glob[_k] = _v
del glob


def constants_overrides(names):
    """Return the configured values whose key is in ``names``."""
    return {key: value for key, value in config.items() if key in names}
