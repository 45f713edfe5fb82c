"""Ordinal terms - the immutable term algebra every service works on.

Terms are frozen dataclasses, so structural identity is ``==`` and terms can
be used as dictionary keys. Everything here is purely syntactic; anything
needing the order lives in the services layer.
"""

from dataclasses import dataclass
from typing import FrozenSet, Iterator, Optional, Tuple


@dataclass(frozen=True)
class OrdTerm:
    """Base class of all ordinal term variants."""

    def __str__(self) -> str:  # pragma: no cover - every variant overrides
        return self.__class__.__name__


@dataclass(frozen=True)
class Zero(OrdTerm):
    def __str__(self) -> str:
        return "0"


@dataclass(frozen=True)
class One(OrdTerm):
    """omega to the power zero."""

    def __str__(self) -> str:
        return "1"


@dataclass(frozen=True)
class Omega1(OrdTerm):
    def __str__(self) -> str:
        return "w1"


@dataclass(frozen=True)
class BigK(OrdTerm):
    def __str__(self) -> str:
        return "K"


@dataclass(frozen=True)
class BigI(OrdTerm):
    def __str__(self) -> str:
        return "I"


@dataclass(frozen=True)
class Sum(OrdTerm):
    """Ordinal sum of at least two additively principal parts."""

    parts: Tuple[OrdTerm, ...]

    def __str__(self) -> str:
        rendered = []
        trailing = 0
        for part in self.parts:
            if isinstance(part, One):
                trailing += 1
                continue
            if trailing:
                rendered.append(str(trailing))
                trailing = 0
            rendered.append(_operand(part))
        if trailing:
            rendered.append(str(trailing))
        return " + ".join(rendered)


@dataclass(frozen=True)
class WExp(OrdTerm):
    """omega to the power ``exponent``."""

    exponent: OrdTerm

    def __str__(self) -> str:
        if isinstance(self.exponent, One):
            return "w"
        return f"w^{_operand(self.exponent)}"


@dataclass(frozen=True)
class Veblen(OrdTerm):
    """Binary Veblen function phi(index)(arg)."""

    index: OrdTerm
    arg: OrdTerm

    def __str__(self) -> str:
        return f"phi({self.index}, {self.arg})"


@dataclass(frozen=True)
class RegSucc(OrdTerm):
    """Successor cardinal of a regular-designated base."""

    base: OrdTerm

    def __str__(self) -> str:
        return f"reg+({self.base})"


@dataclass(frozen=True)
class OrdSeq:
    """Finite sequence of ordinal terms."""

    items: Tuple[OrdTerm, ...] = ()

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[OrdTerm]:
        return iter(self.items)

    def __getitem__(self, index: int) -> OrdTerm:
        return self.items[index]

    def __str__(self) -> str:
        return "[" + ", ".join(str(item) for item in self.items) + "]"


@dataclass(frozen=True)
class ThetaSet:
    """Finite set of ordinals below or equal to K, kept sorted and duplicate-free.

    Sorting needs the order, so build instances with
    ``order_service.theta_set``; the raw constructor keeps whatever it gets
    and ``validate`` reports a bad one.
    """

    elements: Tuple[OrdTerm, ...] = ()

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[OrdTerm]:
        return iter(self.elements)

    def __contains__(self, item: object) -> bool:
        return item in self.elements

    def issubset(self, other: "ThetaSet") -> bool:
        return all(element in other.elements for element in self.elements)

    def __str__(self) -> str:
        return "{" + ", ".join(str(element) for element in self.elements) + "}"


@dataclass(frozen=True)
class PsiReg(OrdTerm):
    """Collapse below a regular-designated kappa at subscript n."""

    kappa: OrdTerm
    n: int
    arg: OrdTerm

    def __str__(self) -> str:
        return f"psi({self.kappa}; {self.n}; {self.arg})"


@dataclass(frozen=True)
class PsiI(OrdTerm):
    """Collapse below I at subscript n."""

    n: int
    arg: OrdTerm

    def __str__(self) -> str:
        return f"psiI({self.n}; {self.arg})"


@dataclass(frozen=True)
class PsiK(OrdTerm):
    """Collapse below K steered by a sequence and a parameter set."""

    n: int
    seq: OrdSeq
    theta: ThetaSet
    arg: OrdTerm

    def __str__(self) -> str:
        return f"psiK({self.n}; {self.seq}; {self.theta}; {self.arg})"


ZERO = Zero()
ONE = One()
OMEGA1 = Omega1()
BIG_K = BigK()
BIG_I = BigI()

COLLAPSE_TYPES = (PsiReg, PsiI, PsiK)
ATOM_TYPES = (Omega1, BigK, BigI, RegSucc, PsiReg, PsiI, PsiK)
CONSTANTS = (ZERO, OMEGA1, BIG_K, BIG_I)


def _operand(term: OrdTerm) -> str:
    """Render ``term`` so it can sit under ``^`` or inside a sum."""
    text = str(term)
    if isinstance(term, Sum) and natural_value(term) is None:
        return f"({text})"
    return text


def nat(k: int) -> OrdTerm:
    """Build the natural number ``k`` as a sum of ones."""
    if k < 0:
        raise ValueError(f"Natural numbers are non-negative, got {k}")
    if k == 0:
        return ZERO
    if k == 1:
        return ONE
    return Sum((ONE,) * k)


def natural_value(term: OrdTerm) -> Optional[int]:
    """Return k when ``term`` is the natural k, else None."""
    if isinstance(term, Zero):
        return 0
    if isinstance(term, One):
        return 1
    if isinstance(term, Sum) and all(isinstance(p, One) for p in term.parts):
        return len(term.parts)
    return None


def summands(term: OrdTerm) -> Tuple[OrdTerm, ...]:
    """Additive decomposition: () for zero, the parts of a sum, else the term."""
    if isinstance(term, Zero):
        return ()
    if isinstance(term, Sum):
        return term.parts
    return (term,)


def from_summands(parts: Tuple[OrdTerm, ...]) -> OrdTerm:
    if not parts:
        return ZERO
    if len(parts) == 1:
        return parts[0]
    return Sum(tuple(parts))


def is_atom(term: OrdTerm) -> bool:
    """True for the strongly critical constructors (constants and collapses)."""
    return isinstance(term, ATOM_TYPES)


def is_epsilon(term: OrdTerm) -> bool:
    """True when omega^term == term, i.e. atoms and Veblen values."""
    return isinstance(term, ATOM_TYPES) or isinstance(term, Veblen)


def is_principal(term: OrdTerm) -> bool:
    """Additively principal: not zero and not a sum."""
    return not isinstance(term, (Zero, Sum))


def phi_pair(term: OrdTerm) -> Optional[Tuple[OrdTerm, OrdTerm]]:
    """(index, arg) of a phi-like principal term, or None for atoms."""
    if isinstance(term, One):
        return ZERO, ZERO
    if isinstance(term, WExp):
        return ZERO, term.exponent
    if isinstance(term, Veblen):
        return term.index, term.arg
    return None


def children(term: OrdTerm) -> Tuple[OrdTerm, ...]:
    """Immediate ordinal subterms, in constructor order."""
    if isinstance(term, Sum):
        return term.parts
    if isinstance(term, WExp):
        return (term.exponent,)
    if isinstance(term, Veblen):
        return (term.index, term.arg)
    if isinstance(term, RegSucc):
        return (term.base,)
    if isinstance(term, PsiReg):
        return (term.kappa, term.arg)
    if isinstance(term, PsiI):
        return (term.arg,)
    if isinstance(term, PsiK):
        return tuple(term.seq) + tuple(term.theta) + (term.arg,)
    return ()


def subterms(term: OrdTerm) -> Iterator[OrdTerm]:
    """Post-order walk over ``term`` and all of its subterms."""
    for child in children(term):
        yield from subterms(child)
    yield term


def kset(term: OrdTerm) -> FrozenSet[OrdTerm]:
    """All ordinal parameters occurring in ``term``, the term itself included."""
    collected = {term}
    for child in children(term):
        collected |= kset(child)
    return frozenset(collected)


def regular_designated(term: OrdTerm) -> bool:
    """Syntactic membership in the designated regulars.

    omega_1 and the successor chains over K or over a collapse below I.
    K itself is the collapse target and is not designated.
    """
    if isinstance(term, Omega1):
        return True
    if isinstance(term, RegSucc):
        base = term.base
        return isinstance(base, (BigK, PsiI)) or regular_designated(base)
    return False


def term_size(term: OrdTerm) -> int:
    """Node count with naturals counted as successor chains.

    The natural k has size k + 1, so sizes grow by one per appended unit.
    """
    if isinstance(term, (Zero, Omega1, BigK, BigI)):
        return 1
    if isinstance(term, One):
        return 2
    if isinstance(term, Sum):
        total = term_size(term.parts[0])
        for part in term.parts[1:]:
            total += 1 if isinstance(part, One) else term_size(part) + 1
        return total
    return 1 + sum(term_size(child) for child in children(term))
