"""Entanglement witness toolkit: mirrored MUB witnesses, Bell-diagonal slices, certification."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
