from typing import Optional

from fastapi import APIRouter, Depends, Query
from sqlalchemy.orm import Session

from core.exceptions import ResourceNotFoundException
from crud.crud_campaign_run import crud_campaign_run
from database.session import get_db
from schemas.campaign_run import CampaignRunResponse, CampaignRunStats
from schemas.response import Page, SuccessResponse, create_list_response

router = APIRouter()


@router.get(
    "",
    response_model=SuccessResponse[Page[CampaignRunResponse]],
    summary="List recorded campaign runs",
    description="Newest first, paginated, optionally filtered by scenario.",
)
async def list_runs(
    page: int = Query(default=1, ge=1, description="Page number"),
    size: int = Query(default=20, ge=1, le=100, description="Runs per page"),
    scenario: Optional[str] = Query(default=None, description="Only runs of this scenario"),
    db: Session = Depends(get_db),
):
    runs = crud_campaign_run.get_recent(db, skip=(page - 1) * size, limit=size, scenario=scenario)
    items = [CampaignRunResponse.model_validate(run) for run in runs]
    return create_list_response(items, total=crud_campaign_run.count(db, scenario), page=page, size=size)


@router.get(
    "/stats",
    response_model=SuccessResponse[CampaignRunStats],
    summary="Success rate and mean duration of recent runs",
)
async def run_stats(
    limit: int = Query(default=100, ge=1, le=1000, description="Finished runs to aggregate"),
    db: Session = Depends(get_db),
) -> SuccessResponse[CampaignRunStats]:
    return SuccessResponse(data=crud_campaign_run.get_stats(db, limit=limit), message="OK")


@router.get(
    "/{run_id}",
    response_model=SuccessResponse[CampaignRunResponse],
    summary="One recorded campaign run",
)
async def get_run(run_id: int, db: Session = Depends(get_db)) -> SuccessResponse[CampaignRunResponse]:
    run = crud_campaign_run.get(db, run_id)
    if run is None:
        raise ResourceNotFoundException(f"Campaign run {run_id} not found")
    return SuccessResponse(data=CampaignRunResponse.model_validate(run), message="OK")
