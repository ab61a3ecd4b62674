"""Railcar shunting toolkit: exact and ARG-DP solvers, MIP export, state counting, conflict graphs."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
