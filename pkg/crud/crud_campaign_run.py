from typing import List, Optional
from sqlalchemy.orm import Session
from sqlalchemy import desc, func
from models.campaign_run import CampaignRun
from schemas.campaign_run import CampaignRunCreate, CampaignRunUpdate, CampaignRunStats


class CRUDCampaignRun:
    def create(self, db: Session, *, obj_in: CampaignRunCreate) -> CampaignRun:
        db_obj = CampaignRun(**obj_in.model_dump())
        db.add(db_obj)
        db.commit()
        db.refresh(db_obj)
        return db_obj

    def get(self, db: Session, id: int) -> Optional[CampaignRun]:
        return db.query(CampaignRun).filter(CampaignRun.id == id).first()

    def get_recent(
        self,
        db: Session,
        skip: int = 0,
        limit: int = 20,
        scenario: Optional[str] = None,
    ) -> List[CampaignRun]:
        """
        Newest first, optionally restricted to one scenario
        """
        query = db.query(CampaignRun)
        if scenario:
            query = query.filter(CampaignRun.scenario == scenario)
        return query.order_by(desc(CampaignRun.id)).offset(skip).limit(limit).all()

    def count(self, db: Session, scenario: Optional[str] = None) -> int:
        query = db.query(func.count(CampaignRun.id))
        if scenario:
            query = query.filter(CampaignRun.scenario == scenario)
        return query.scalar() or 0

    def update(self, db: Session, *, db_obj: CampaignRun, obj_in: CampaignRunUpdate) -> CampaignRun:
        update_data = obj_in.model_dump(exclude_unset=True)
        for field, value in update_data.items():
            setattr(db_obj, field, value)

        db.add(db_obj)
        db.commit()
        db.refresh(db_obj)
        return db_obj

    def get_stats(self, db: Session, limit: int = 100) -> CampaignRunStats:
        """
        Success rate and mean duration over the most recent finished runs
        """
        runs = (
            db.query(CampaignRun)
            .filter(CampaignRun.status.in_(["success", "failed"]))
            .order_by(desc(CampaignRun.id))
            .limit(limit)
            .all()
        )
        total = len(runs)
        successful = sum(1 for r in runs if r.status == "success")
        durations = [r.duration for r in runs if r.duration is not None]
        return CampaignRunStats(
            total_runs=total,
            successful_runs=successful,
            failed_runs=total - successful,
            success_rate=round(successful / total * 100, 2) if total else 0.0,
            average_duration_seconds=round(sum(durations) / len(durations), 3) if durations else 0.0,
            recent_failure_reasons=[r.error_message for r in runs if r.status == "failed" and r.error_message][:5],
        )


crud_campaign_run = CRUDCampaignRun()
