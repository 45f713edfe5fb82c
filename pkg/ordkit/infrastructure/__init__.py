"""Infrastructure layer - Adapters the services rely on.

This layer provides:
- Configuration management (pydantic-settings, ORDKIT_* environment)
- Structured logging (structlog, stderr only)
"""

from . import config
from . import logging

__all__ = [
    "config",
    "logging",
]
