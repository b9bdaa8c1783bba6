from typing import Optional, Dict, Any, List
from datetime import datetime
from pydantic import BaseModel, ConfigDict


class CampaignRunBase(BaseModel):
    """
    Base schema for a recorded campaign run
    """
    scenario: str
    master_seed: int
    config_hash: str
    jammer: str
    status: str = "running"
    started_at: datetime
    completed_at: Optional[datetime] = None
    duration: Optional[float] = None
    trials: int
    out_dir: Optional[str] = None
    summary: Optional[Dict[str, Any]] = None
    error_message: Optional[str] = None


class CampaignRunCreate(CampaignRunBase):
    pass


class CampaignRunUpdate(BaseModel):
    status: Optional[str] = None
    completed_at: Optional[datetime] = None
    duration: Optional[float] = None
    summary: Optional[Dict[str, Any]] = None
    error_message: Optional[str] = None


class CampaignRunResponse(CampaignRunBase):
    id: int
    created_at: Optional[datetime] = None

    model_config = ConfigDict(from_attributes=True)


class CampaignRunStats(BaseModel):
    """
    Aggregate view over recent runs
    """
    total_runs: int
    successful_runs: int
    failed_runs: int
    success_rate: float
    average_duration_seconds: float
    recent_failure_reasons: List[str]
