from contextlib import asynccontextmanager

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from app.algebra.identify import load_catalog
from app.algebra.presets import preset_files
from app.core.config import settings
from app.core.error_handler import custom_exception_handler
from app.core.exceptions import BaseEngineError
from app.core.log_config import logger
from app.middleware.timing_middleware import TimingMiddleware

from app.api import cartan as cartan_router
from app.api import forms as forms_router
from app.api import prolong as prolong_router
from app.api import series as series_router


@asynccontextmanager
async def lifespan(app: FastAPI):
    """
    Manages application startup and shutdown events.
    - Loads the identification catalog and lists the shipped presets on startup.
    """
    logger.info("Application startup...")
    catalog = load_catalog()
    logger.info(f"{len(catalog.entries)} catalog entries, {len(preset_files())} preset files")
    yield
    logger.info("Application shutdown...")

app = FastAPI(
    title="Char-2 Lie Superalgebra Engine",
    description="Cartan-matrix algebras, gradings and Cartan prolongs in characteristic 2.",
    version="1.0.0",
    lifespan=lifespan
)

app.add_middleware(TimingMiddleware)
app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.ALLOWED_ORIGINS,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.add_exception_handler(BaseEngineError, custom_exception_handler)

# --- API Router Setup ---
logger.info("Attaching API routers...")
app.include_router(cartan_router.router, prefix="/api")
app.include_router(prolong_router.router, prefix="/api")
app.include_router(series_router.router, prefix="/api")
app.include_router(forms_router.router, prefix="/api")

@app.get("/", tags=["Health Check"])
async def read_root():
    """Health check; also reports what the engine loaded at startup."""
    catalog = load_catalog()
    return {
        "status": "ok",
        "catalog_entries": len(catalog.entries),
        "tables": sorted(catalog.tables),
        "presets": len(preset_files()),
    }
