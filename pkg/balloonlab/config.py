import os
import logging
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 10 ** 8
DEFAULT_LARGE_N = 100


class Settings(BaseModel):
    """Runtime settings, read from the environment (optionally seeded by .env)."""

    budget: int = Field(default=DEFAULT_BUDGET, gt=0)
    threads: int = Field(default=1, ge=1)
    large_n: int = Field(default=DEFAULT_LARGE_N, ge=1)
    log_level: str = "INFO"

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        value = value.upper()
        if not isinstance(logging.getLevelName(value), int):
            raise ValueError(f"unknown log level {value}")
        return value


_ENV_KEYS = {
    "budget": "BALLOONLAB_BUDGET",
    "threads": "BALLOONLAB_THREADS",
    "large_n": "BALLOONLAB_LARGE_N",
    "log_level": "BALLOONLAB_LOG_LEVEL",
}


def load_settings(env_file: Optional[str] = None) -> Settings:
    """
    Build Settings from environment variables.

    Invalid values are logged and replaced by their defaults, one key at a time.

    Args:
        env_file: Optional path of a .env file to load first.

    Returns:
        Settings: validated settings.
    """
    load_dotenv(env_file)
    raw = {key: os.getenv(env) for key, env in _ENV_KEYS.items() if os.getenv(env)}
    try:
        return Settings(**raw)
    except ValidationError as e:
        logger.error(f"Invalid environment configuration, falling back per key: {e}")
        accepted = {}
        for key, value in raw.items():
            try:
                Settings(**{key: value})
                accepted[key] = value
            except ValidationError:
                logger.error(f"Ignoring {_ENV_KEYS[key]}={value!r}")
        return Settings(**accepted)
