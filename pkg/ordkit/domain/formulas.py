"""Formulas - the small second-order language ranks and classes are computed on.

Literals carry a polarity instead of a separate negation node; ``negate``
pushes negation through connectives and quantifiers.
"""

from dataclasses import dataclass, replace
from typing import Union

from .terms import OrdTerm

EMPTY_TAG = "empty"  # the empty subset: R_{empty,kappa}(t) is always false


@dataclass(frozen=True)
class Var:
    """Bound individual variable."""

    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class UniverseBound:
    """The bound of an unbounded quantifier (the whole universe below I)."""

    def __str__(self) -> str:
        return "L"


LI = UniverseBound()

Arg = Union[OrdTerm, Var]
Bound = Union[OrdTerm, Var, UniverseBound]


@dataclass(frozen=True)
class Formula:
    """Base class of all formula variants."""


def _sign(positive: bool) -> str:
    return "" if positive else "~"


@dataclass(frozen=True)
class LitIn(Formula):
    a: Arg
    b: Arg
    positive: bool = True

    def __str__(self) -> str:
        return f"{_sign(self.positive)}in({self.a}, {self.b})"


@dataclass(frozen=True)
class LitP(Formula):
    t1: Arg
    t2: Arg
    t3: Arg
    positive: bool = True

    def __str__(self) -> str:
        return f"{_sign(self.positive)}P({self.t1}, {self.t2}, {self.t3})"


@dataclass(frozen=True)
class LitPI(Formula):
    t: Arg
    n: int
    positive: bool = True

    def __str__(self) -> str:
        return f"{_sign(self.positive)}PI({self.n}; {self.t})"


@dataclass(frozen=True)
class LitReg(Formula):
    t: Arg
    positive: bool = True

    def __str__(self) -> str:
        return f"{_sign(self.positive)}Reg({self.t})"


@dataclass(frozen=True)
class LitR(Formula):
    """Membership in the subset named ``tag`` restricted to kappa."""

    tag: str
    kappa: OrdTerm
    t: Arg
    positive: bool = True

    def __str__(self) -> str:
        return f"{_sign(self.positive)}R(b#{self.tag}, {self.kappa}; {self.t})"


@dataclass(frozen=True)
class LitX(Formula):
    """Membership in the second-order variable X_index."""

    index: int
    t: Arg
    positive: bool = True

    def __str__(self) -> str:
        return f"{_sign(self.positive)}X({self.index}; {self.t})"


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return f"({self.left} | {self.right})"


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return f"({self.left} & {self.right})"


@dataclass(frozen=True)
class ExB(Formula):
    var: str
    bound: Bound
    body: Formula

    def __str__(self) -> str:
        return f"(ex {self.var}<{self.bound}. {self.body})"


@dataclass(frozen=True)
class AllB(Formula):
    var: str
    bound: Bound
    body: Formula

    def __str__(self) -> str:
        return f"(all {self.var}<{self.bound}. {self.body})"


@dataclass(frozen=True)
class Ex2(Formula):
    """Exists X_index below kappa."""

    kappa: OrdTerm
    body: Formula
    index: int = 0

    def __str__(self) -> str:
        return f"(EX X{self.index}<{self.kappa}. {self.body})"


@dataclass(frozen=True)
class All2(Formula):
    kappa: OrdTerm
    body: Formula
    index: int = 0

    def __str__(self) -> str:
        return f"(ALL X{self.index}<{self.kappa}. {self.body})"


LITERAL_TYPES = (LitIn, LitP, LitPI, LitReg, LitR, LitX)


def is_literal(formula: Formula) -> bool:
    return isinstance(formula, LITERAL_TYPES)


def negate(formula: Formula) -> Formula:
    """Negation normal form of the negation of ``formula``."""
    if isinstance(formula, LITERAL_TYPES):
        return replace(formula, positive=not formula.positive)
    if isinstance(formula, Or):
        return And(negate(formula.left), negate(formula.right))
    if isinstance(formula, And):
        return Or(negate(formula.left), negate(formula.right))
    if isinstance(formula, ExB):
        return AllB(formula.var, formula.bound, negate(formula.body))
    if isinstance(formula, AllB):
        return ExB(formula.var, formula.bound, negate(formula.body))
    if isinstance(formula, Ex2):
        return All2(formula.kappa, negate(formula.body), formula.index)
    if isinstance(formula, All2):
        return Ex2(formula.kappa, negate(formula.body), formula.index)
    raise TypeError(f"Not a formula: {formula!r}")
