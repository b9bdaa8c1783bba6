from fastapi import APIRouter

from app.api.v1.endpoints import analytics, runs

# Create a main router for the v1 API
api_router = APIRouter()

# All routes from analytics.py will be prefixed with /analytics
api_router.include_router(analytics.router, prefix="/analytics", tags=["Analytics"])

# All routes from runs.py will be prefixed with /runs
api_router.include_router(runs.router, prefix="/runs", tags=["Runs"])
