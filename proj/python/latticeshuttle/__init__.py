"""Coherent directed transport and entangling protocols in optical superlattices."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
