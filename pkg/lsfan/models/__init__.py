"""Database models"""

from lsfan.models.base import Base
from lsfan.models.verification_run import VerificationRun

__all__ = [
    "Base",
    "VerificationRun",
]
