import os
from functools import lru_cache
from typing import Optional

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# Project root .env, same place the maintenance scripts look
PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
ENV_PATH = os.path.join(PROJECT_ROOT, ".env")


class Settings(BaseSettings):
    """Runtime configuration, read from FREE_KNOTS_* environment variables."""

    model_config = SettingsConfigDict(env_prefix="FREE_KNOTS_", extra="ignore")

    log_level: str = "WARNING"
    # Largest diagram oracle_decide accepts; 12 chords is ~3.6M pairings
    oracle_max_chords: int = Field(default=12, ge=0)
    # Finite default so malformed huge inputs terminate in the CLI
    cli_node_budget: Optional[int] = Field(default=5_000_000, ge=0)
    threads: int = Field(default=1, ge=1)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    load_dotenv(dotenv_path=ENV_PATH)
    return Settings()
