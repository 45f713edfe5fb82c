"""
Domain Value Objects - Small immutable enumerations shared by every service.
"""

from enum import Enum


class Ordering(Enum):
    """Outcome of comparing two ordinal terms."""

    LT = "LT"
    EQ = "EQ"
    GT = "GT"

    def flip(self) -> "Ordering":
        """Return the ordering seen from the other side."""
        if self is Ordering.LT:
            return Ordering.GT
        if self is Ordering.GT:
            return Ordering.LT
        return self

    def __str__(self) -> str:
        return self.value


class Connective(Enum):
    """Direction of an infinitary formula: disjunction or conjunction."""

    DISJ = "Disj"  # one component suffices
    CONJ = "Conj"  # every component required

    def dual(self) -> "Connective":
        return Connective.CONJ if self is Connective.DISJ else Connective.DISJ

    def __str__(self) -> str:
        return self.value


class IndexKind(Enum):
    """Shape of the index set J of an infinitary formula."""

    FINITE = "Finite"
    SYMBOLIC_MU = "SymbolicMu"  # the least witness below a bound, not computed
    SYMBOLIC_POWERSET = "SymbolicPowerset"  # subsets of a regular, not enumerable
    ELEMENTS_BELOW = "ElementsBelow"

    def __str__(self) -> str:
        return self.value
