"""Command-line interface: parser, printer, JSON codec and the ``ordkit`` command."""

from .main import main, run_command

__all__ = ["main", "run_command"]
