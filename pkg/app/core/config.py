from pathlib import Path
from typing import List, Optional
from pydantic_settings import BaseSettings

PACKAGE_DIR = Path(__file__).resolve().parent.parent

class Settings(BaseSettings):
    HEIGHT_CAP: int = 64

    SENTINEL_LO: int = 6
    SENTINEL_HI: int = 7
    SHEARING_PROBE_CAP: int = 3
    DEFAULT_DEGREE_CAP: Optional[int] = None

    SIMPLICITY_RANDOM_PROBES: int = 64
    RANDOM_SEED: int = 2024

    DATA_DIR: Path = PACKAGE_DIR / "data"
    CACHE_DIR: Path = Path(".lie2_cache")

    LOG_DIR: str = "logs"
    LOG_LEVEL: str = "INFO"

    ALLOWED_ORIGINS: List[str] = ["*"]
    SLOW_REQUEST_SECONDS: float = 30.0

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        extra = 'ignore'

settings = Settings()
