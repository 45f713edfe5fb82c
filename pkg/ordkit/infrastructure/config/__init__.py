"""Configuration management - Load and validate toolkit settings.

Settings come from ``ORDKIT_*`` environment variables (and an optional
``.env`` file) through pydantic-settings.
"""

from functools import lru_cache
from typing import Any

from pydantic import Field, ValidationError as PydanticValidationError, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from ...domain.exceptions import ConfigurationError

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class ToolkitConfig(BaseSettings):
    """Toolkit configuration container."""

    model_config = SettingsConfigDict(
        env_prefix="ORDKIT_",
        env_file=".env",
        extra="ignore",
        frozen=True,
    )

    max_tower: int = Field(default=8, ge=1, le=64)  # ceiling is omega_max_tower(I+1)
    enum_cap: int = Field(default=200_000, ge=1)
    big_n: int = Field(default=2, ge=1)
    corpus_size: int = Field(default=10_000, ge=1)
    log_level: str = "WARNING"
    log_json: bool = False

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        upper = value.upper()
        if upper not in LOG_LEVELS:
            raise ValueError(f"log_level must be one of {', '.join(LOG_LEVELS)}")
        return upper


class ConfigManager:
    """Manage toolkit configuration."""

    @staticmethod
    @lru_cache(maxsize=1)
    def load() -> ToolkitConfig:
        """Load configuration from the environment.

        Returns:
            ToolkitConfig with loaded settings

        Raises:
            ConfigurationError: If an ORDKIT_* value is invalid
        """
        try:
            return ToolkitConfig()
        except PydanticValidationError as e:
            first = e.errors()[0]
            key = ".".join(str(part) for part in first.get("loc", ()))
            raise ConfigurationError(f"Invalid setting: {first['msg']}", key=key) from e

    @staticmethod
    def override(**values: Any) -> ToolkitConfig:
        """Replace the cached configuration with explicit values (CLI flags, tests)."""
        try:
            config = ToolkitConfig(**values)
        except PydanticValidationError as e:
            first = e.errors()[0]
            key = ".".join(str(part) for part in first.get("loc", ()))
            raise ConfigurationError(f"Invalid setting: {first['msg']}", key=key) from e
        ConfigManager.reset()
        _overrides["config"] = config
        return config

    @staticmethod
    def reset() -> None:
        """Drop cached and overridden configuration."""
        ConfigManager.load.cache_clear()
        _overrides.clear()


_overrides: dict = {}


def get_settings() -> ToolkitConfig:
    """Current settings: an override if one is active, else the environment."""
    return _overrides.get("config") or ConfigManager.load()
