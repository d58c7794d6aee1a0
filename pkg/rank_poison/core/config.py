"""
Process-level settings for the simulation toolkit.
"""
from typing import Optional

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings."""

    # Application metadata
    APP_NAME: str = "rank-poison"
    APP_VERSION: str = "0.1.0"

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_FILE: Optional[str] = None

    # Outputs
    OUTPUT_DIR: str = "results"

    # Replications
    DEFAULT_JOBS: int = 1

    # Data
    MOVIELENS_RATINGS: Optional[str] = None

    @field_validator("LOG_LEVEL")
    @classmethod
    def normalize_log_level(cls, v: str) -> str:
        return v.upper()

    @field_validator("DEFAULT_JOBS")
    @classmethod
    def positive_jobs(cls, v: int) -> int:
        if v < 1:
            raise ValueError("DEFAULT_JOBS must be at least 1")
        return v

    model_config = SettingsConfigDict(
        case_sensitive=True,
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore"
    )

# Initialize settings
settings = Settings()
