"""
ordkit - Symbolic ordinal notation toolkit
Main package root with version and imports.
"""

__version__ = "0.3.1"
__license__ = "Proprietary"

# Version tuple for comparisons
VERSION_INFO = (0, 3, 1)

__all__ = [
    "OrdTerm",
    "Formula",
    "cmp",
    "parse_term",
    "parse_formula",
    "run_command",
]

from .domain import Formula, OrdTerm
from .services import cmp
from .presentation.cli.parser import parse_formula, parse_term
from .presentation.cli.main import run_command
