"""
Run registry bookkeeping around campaign execution.

A `running` row is written before the campaign starts and updated to
`success` or `failed` with the duration once it ends. Registry errors are
logged and never abort the campaign itself.
"""
import logging
import time
from datetime import datetime, timezone
from typing import Callable, Optional, Tuple

from sqlalchemy.exc import SQLAlchemyError
from sqlalchemy.orm import Session

from crud.crud_campaign_run import crud_campaign_run
from database.init import init_database
from database.session import SessionLocal
from harness.config import config_hash
from models.campaign_run import CampaignRun
from schemas.campaign_run import CampaignRunCreate, CampaignRunUpdate
from schemas.experiment import CampaignResult, ExperimentConfig

logger = logging.getLogger(__name__)


def _create_run_record(db: Session, config: ExperimentConfig, out_dir: Optional[str]) -> Optional[CampaignRun]:
    try:
        return crud_campaign_run.create(db, obj_in=CampaignRunCreate(
            scenario=config.scenario,
            master_seed=config.master_seed,
            config_hash=config_hash(config),
            jammer=config.jammer.strategy.value,
            status="running",
            started_at=datetime.now(timezone.utc),
            trials=config.trials,
            out_dir=out_dir,
        ))
    except SQLAlchemyError as e:
        db.rollback()
        logger.warning(f"Could not record campaign start: {e}")
        return None


def _finish_run_record(db: Session, record: Optional[CampaignRun], update: CampaignRunUpdate) -> None:
    if record is None:
        return
    try:
        crud_campaign_run.update(db, db_obj=record, obj_in=update)
    except SQLAlchemyError as e:
        db.rollback()
        logger.warning(f"Could not record campaign outcome for run {record.id}: {e}")


def record_campaign(
    config: ExperimentConfig,
    execute: Callable[[], CampaignResult],
    out_dir: Optional[str] = None,
) -> Tuple[CampaignResult, Optional[int]]:
    """
    Run `execute` under a registry record. Returns the result and the run id
    (None when the registry is unavailable). Campaign exceptions propagate
    after the failure has been recorded.
    """
    init_database()
    db = SessionLocal()
    start_time = time.time()
    try:
        record = _create_run_record(db, config, out_dir)
        try:
            result = execute()
        except Exception as e:
            duration = time.time() - start_time
            _finish_run_record(db, record, CampaignRunUpdate(
                status="failed",
                completed_at=datetime.now(timezone.utc),
                duration=duration,
                error_message=str(e),
            ))
            logger.error(f"Campaign '{config.scenario}' failed after {duration:.1f}s: {e}")
            raise

        duration = time.time() - start_time
        _finish_run_record(db, record, CampaignRunUpdate(
            status="success",
            completed_at=datetime.now(timezone.utc),
            duration=duration,
            summary=result.summary,
        ))
        logger.info(f"Campaign '{config.scenario}' finished in {duration:.1f}s")
        return result, record.id if record is not None else None
    finally:
        db.close()
