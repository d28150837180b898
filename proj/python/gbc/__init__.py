"""Python bindings for the gbc solver library."""

from ._gbc import *  # noqa: F401,F403
from ._gbc import __doc__  # noqa: F401
