"""Verification run model"""

from datetime import datetime

from sqlalchemy import Boolean, Column, DateTime, Integer, String, Text

from lsfan.models.base import Base


class VerificationRun(Base):
    """One recorded ``verify`` run and its full report"""

    __tablename__ = "verification_runs"

    id = Column(Integer, primary_key=True, index=True)

    # Case
    case_type = Column(String, nullable=False, index=True)
    lambda_ = Column("lambda", String, nullable=False)
    tau = Column(String, nullable=False)  # lexmin word of the minimal representative, "" for e
    d_max = Column(Integer, nullable=False)

    # Outcome
    ok = Column(Boolean, nullable=False)
    report = Column(Text, nullable=False)  # CaseReport JSON (list of reports for --all-sigma)

    created_at = Column(DateTime, default=datetime.utcnow, index=True)

    def __repr__(self):
        return f"<VerificationRun(case_type={self.case_type}, tau={self.tau!r}, ok={self.ok})>"
