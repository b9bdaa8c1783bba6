"""
Database initialization module
Creates the run registry tables on first use
"""

import logging

from sqlalchemy import inspect
from sqlalchemy.exc import SQLAlchemyError

from core.config import settings
from database.session import engine, Base

# Import all models to ensure they are registered with SQLAlchemy
from models.campaign_run import CampaignRun  # noqa: F401

logger = logging.getLogger(__name__)

REQUIRED_TABLES = ["campaign_runs"]


def check_tables_exist() -> dict:
    """
    Map each required table name to whether it exists
    """
    try:
        existing_tables = inspect(engine).get_table_names()
        return {table: table in existing_tables for table in REQUIRED_TABLES}
    except SQLAlchemyError as e:
        logger.error(f"Error checking tables: {e}")
        return {}


def init_database() -> bool:
    """
    Create all registry tables if they don't exist. Safe to run repeatedly.
    """
    try:
        Base.metadata.create_all(bind=engine, checkfirst=True)
        logger.debug(f"Run registry ready at {settings.DATABASE_URL}")
        return True
    except SQLAlchemyError as e:
        logger.error(f"Error creating registry tables: {e}")
        return False


def get_database_info() -> dict:
    table_status = check_tables_exist()
    return {
        "database_url": settings.DATABASE_URL,
        "database_type": settings.DATABASE_URL.split(":", 1)[0],
        "tables": table_status,
        "all_tables_exist": all(table_status.values()) if table_status else False,
    }
