"""Robot pointing interpretation model."""

from ._core import *  # noqa: F401,F403
from ._core import PointingError

__all__ = [name for name in dir() if not name.startswith("_")]
