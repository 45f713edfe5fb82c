"""
Domain Entities - Records produced and consumed by the services.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..exceptions import ValidationError
from ..terms import ZERO, OrdSeq, OrdTerm, ThetaSet
from ..value_objects import Connective, IndexKind


@dataclass(frozen=True)
class Violation:
    """One failed invariant found by ``validate``."""

    clause: str
    subterm: OrdTerm
    message: str

    def __str__(self) -> str:
        return f"{self.clause}: {self.message} in '{self.subterm}'"


@dataclass(frozen=True)
class ValidityReport:
    """Outcome of validating a term."""

    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def first(self) -> Optional[Violation]:
        """The first failing clause, in post-order over the term."""
        return self.violations[0] if self.violations else None

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(str(v) for v in self.violations)


@dataclass(frozen=True)
class HullQuery:
    """Parameters of a term-level hull H_{alpha,n}[theta, kappa](threshold).

    ``threshold`` stands for the set of all terms below it.
    """

    alpha: OrdTerm
    n: int = 1
    threshold: OrdTerm = ZERO
    theta: ThetaSet = field(default_factory=ThetaSet)
    kappa_ctx: Optional[OrdTerm] = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValidationError("Hull subscript must be positive", field="n")

    def with_alpha(self, alpha: OrdTerm) -> "HullQuery":
        return HullQuery(alpha, self.n, self.threshold, self.theta, self.kappa_ctx)


@dataclass(frozen=True)
class HullClause:
    """The clause that admitted a term into a hull, with its premises."""

    name: str
    premises: Tuple[OrdTerm, ...] = ()


@dataclass(frozen=True)
class MhDescriptor:
    """Symbolic record of the class Mh_{k,n}(seq)[theta]; membership is never decided."""

    k: int
    n: int
    seq: OrdSeq
    theta: ThetaSet = field(default_factory=ThetaSet)
    big_n: int = 2

    def __post_init__(self) -> None:
        if not 0 <= self.k <= self.big_n:
            raise ValidationError(
                f"Level {self.k} outside 0..{self.big_n}", field="k", value=str(self.k)
            )
        if self.n < 1:
            raise ValidationError("Subscript must be positive", field="n")
        if len(self.seq) != self.big_n - self.k:
            raise ValidationError(
                f"Sequence length {len(self.seq)} != N - k = {self.big_n - self.k}",
                field="seq",
                value=str(self.seq),
            )

    def __str__(self) -> str:
        return f"Mh_{{{self.k},{self.n}}}({self.seq}){self.theta}"


@dataclass(frozen=True)
class ResolventDescriptor:
    """Symbolic record of a resolvent class: component Mh classes plus a hull condition."""

    classes: Tuple[MhDescriptor, ...]
    hull_stage: OrdTerm
    n: int
    theta: ThetaSet

    @property
    def condition(self) -> str:
        return f"H_{{{self.hull_stage},{self.n}}}[{self.theta} + pi](rho) & pi <= rho"

    def __str__(self) -> str:
        inner = " & ".join(str(c) for c in self.classes) or "true"
        return f"{{rho : {inner} ; {self.condition}}}"


@dataclass(frozen=True)
class AbgamRecord:
    """The constants b_n, a_n, gamma_{k,n} and alpha-bar_{k,n} for fixed n and N."""

    n: int
    big_n: int
    b: OrdTerm
    a: OrdTerm
    gamma: Dict[int, OrdTerm]
    alpha_vec: Dict[int, OrdSeq]

    def __hash__(self) -> int:
        return hash((self.n, self.big_n, self.b, self.a))


@dataclass(frozen=True)
class SideCondition:
    """A logged inequality or caller-asserted flag along a trace."""

    label: str
    holds: bool
    asserted: bool = False  # true when taken on trust rather than computed

    def __str__(self) -> str:
        mark = "assumed" if self.asserted else ("ok" if self.holds else "FAILED")
        return f"{self.label} [{mark}]"


@dataclass(frozen=True)
class BoundState:
    """Quantitative annotations of one derivation: height, cut rank, hull stage, theory."""

    height: OrdTerm
    cut_rank: OrdTerm
    hull_stage: OrdTerm
    theory: int
    n: int = 1
    big_n: int = 2
    note: str = ""
    side_conditions: Tuple[SideCondition, ...] = ()

    def __post_init__(self) -> None:
        if not -2 <= self.theory <= self.big_n:
            raise ValidationError(
                f"Theory level {self.theory} outside -2..{self.big_n}",
                field="theory",
                value=str(self.theory),
            )

    @property
    def conditions_hold(self) -> bool:
        return all(c.holds for c in self.side_conditions)


@dataclass(frozen=True)
class ClassifyResult:
    """Class membership flags of a formula relative to a regular lambda."""

    is_delta0_lambda: bool
    is_sigma_sigma: bool
    pi1_level: Optional[int]

    @property
    def in_pi20(self) -> bool:
        return self.pi1_level is not None


@dataclass(frozen=True)
class IndexDescriptor:
    """Index set of an infinitary formula."""

    kind: IndexKind
    size: Optional[int] = None  # for FINITE
    bound: Optional[object] = None  # for ELEMENTS_BELOW and SYMBOLIC_MU

    def __str__(self) -> str:
        if self.kind is IndexKind.FINITE:
            return f"Finite({self.size})"
        if self.bound is not None:
            return f"{self.kind}({self.bound})"
        return str(self.kind)


@dataclass(frozen=True)
class AssignShape:
    connective: Connective
    index: IndexDescriptor

    def __str__(self) -> str:
        return f"({self.connective}, {self.index})"


@dataclass
class SuiteResult:
    """Outcome of one property suite run by ``check``."""

    name: str
    checked: int = 0
    failures: List[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures
