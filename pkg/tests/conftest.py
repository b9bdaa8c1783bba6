import sys
import os
import pytest
import numpy as np
from typing import AsyncGenerator
from httpx import AsyncClient, ASGITransport

# Add the project root directory to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

# The run registry must point at an in-memory database before settings load
os.environ["DATABASE_URL"] = "sqlite:///:memory:"
os.environ.setdefault("LOG_LEVEL", "INFO")

from app.main import app  # noqa: E402
from database.init import init_database  # noqa: E402
from database.session import Base, SessionLocal, engine  # noqa: E402

TEST_SEED = 20240601


@pytest.fixture
def rng() -> np.random.Generator:
    """
    A fixed-seed generator so statistical assertions are reproducible.
    """
    return np.random.default_rng(TEST_SEED)


@pytest.fixture
def db_session():
    """
    A session on freshly created registry tables, dropped afterwards.
    """
    init_database()
    db = SessionLocal()
    try:
        yield db
    finally:
        db.close()
        Base.metadata.drop_all(bind=engine)


@pytest.fixture(scope="function")
async def async_client(db_session) -> AsyncGenerator[AsyncClient, None]:
    """
    An asynchronous test client for the API. ASGITransport does not run the
    lifespan hook, so the registry tables come from db_session.
    """
    transport = ASGITransport(app=app)
    async with AsyncClient(transport=transport, base_url="http://test") as client:
        yield client
