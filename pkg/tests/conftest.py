import pytest
from fastapi.testclient import TestClient

from app.dependencies.service_dependencies import ServiceProvider
from app.main import app


@pytest.fixture(scope="session")
def services() -> ServiceProvider:
    return ServiceProvider()


@pytest.fixture(scope="session")
def client():
    with TestClient(app) as c:
        yield c
