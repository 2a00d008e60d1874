"""Run persistence and text file formats for pyfraxis."""

from .formats import FormatError
from .persistence import PersistenceError, RunStorage

__all__ = ["FormatError", "PersistenceError", "RunStorage"]
