"""Photon-added squeezed and circle states: overlaps, measures and completeness checks."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
