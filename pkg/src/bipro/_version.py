"""Version information for bipro."""

from importlib.metadata import version

__version__ = version("bipro")
