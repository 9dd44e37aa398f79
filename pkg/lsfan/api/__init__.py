"""API routes"""

from lsfan.api import cases

__all__ = ["cases"]
