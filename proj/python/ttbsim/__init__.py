"""Sprung-mass vehicle crossing a two-layer rail-on-bridge structure.

Thin python layer over the C++ core. All heavy types live in
``ttbsim._core``; this package re-exports them.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__, reference  # noqa: F401
