import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from app.api.v1.api import api_router
from core.config import settings
from core.unified_error_handler import UnifiedErrorHandler
from database.init import get_database_info, init_database

logging.basicConfig(level=getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO))
logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """
    Create the run registry tables before serving requests
    """
    if init_database():
        logger.info("Run registry initialized")
    else:
        # Keep serving the analytics routes even without a registry
        logger.error("Run registry initialization failed")
    yield


app = FastAPI(
    title="PHY-Key DSSS Lab API",
    description="Analytic success probability, throughput and recorded campaign runs",
    version=settings.TOOL_VERSION,
    docs_url="/docs",
    redoc_url="/redoc",
    lifespan=lifespan,
    swagger_ui_parameters={
        "displayRequestDuration": True,
        "defaultModelsExpandDepth": 1,
        "filter": True
    }
)

allowed_origins = ["*"] if settings.LOG_LEVEL == "DEBUG" else [
    "http://127.0.0.1:8000",
    "http://localhost:8000",
]
app.add_middleware(
    CORSMiddleware,
    allow_origins=allowed_origins,
    allow_credentials=True,
    allow_methods=["GET", "POST", "OPTIONS"],
    allow_headers=["*"],
)


UnifiedErrorHandler.install(app)


@app.get("/", tags=["Root"], summary="API status")
def read_root():
    return {
        "status": "ok",
        "message": "PHY-Key DSSS Lab API",
        "version": settings.TOOL_VERSION,
    }


@app.get("/health", tags=["Health"], summary="Health check")
def health_check():
    """
    Reports the registry table status alongside liveness.
    """
    info = get_database_info()
    return {
        "status": "healthy",
        "registry_ready": info["all_tables_exist"],
    }


# All routes from app/api/v1/api.py are included under the /api/v1 prefix
app.include_router(api_router, prefix="/api/v1")
