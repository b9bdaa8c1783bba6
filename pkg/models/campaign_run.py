from sqlalchemy import Column, Integer, BigInteger, String, DateTime, JSON, Text, Float
from sqlalchemy.sql import func
from database.session import Base


class CampaignRun(Base):
    """
    One `run` invocation of the experiment harness
    """
    __tablename__ = "campaign_runs"

    id = Column(Integer, primary_key=True, index=True)
    scenario = Column(String(100), nullable=False, index=True)
    master_seed = Column(BigInteger, nullable=False)
    config_hash = Column(String(64), nullable=False, index=True)
    jammer = Column(String(20), nullable=False)
    status = Column(String(20), nullable=False, index=True)  # "running", "success", "failed"
    started_at = Column(DateTime(timezone=True), nullable=False)
    completed_at = Column(DateTime(timezone=True), nullable=True)
    duration = Column(Float, nullable=True)  # seconds
    trials = Column(Integer, nullable=False)
    out_dir = Column(Text, nullable=True)
    summary = Column(JSON, nullable=True)
    error_message = Column(Text, nullable=True)
    created_at = Column(DateTime(timezone=True), server_default=func.now(), nullable=False)

    def __repr__(self):
        return f"<CampaignRun(id={self.id}, scenario={self.scenario}, status={self.status}, seed={self.master_seed})>"
