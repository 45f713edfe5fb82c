"""Logging infrastructure - Structured logging for the toolkit.

All records go to stderr so command output on stdout stays deterministic.
"""

import logging
import sys
from typing import Optional

import structlog

_configured = False


def setup_logging(log_level: str = "WARNING", json_output: bool = False) -> None:
    """Configure structlog and the stdlib root handler.

    Args:
        log_level: Minimum level name (DEBUG, INFO, ...)
        json_output: Render JSON lines instead of console output
    """
    global _configured

    renderer = (
        structlog.processors.JSONRenderer(sort_keys=True)
        if json_output
        else structlog.dev.ConsoleRenderer(colors=False)
    )
    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            renderer,
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )

    root = logging.getLogger("ordkit")
    root.handlers.clear()
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(message)s"))
    root.addHandler(handler)
    root.setLevel(getattr(logging, log_level.upper(), logging.WARNING))
    root.propagate = False
    _configured = True


def get_logger(name: Optional[str] = None) -> structlog.stdlib.BoundLogger:
    """Get a structured logger for the given module.

    Args:
        name: Logger name (typically __name__)

    Returns:
        Bound structlog logger
    """
    if not _configured:
        setup_logging()
    return structlog.get_logger(name)
