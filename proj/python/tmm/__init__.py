"""Critical kernels of the quartic/quadratic two-matrix model."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
