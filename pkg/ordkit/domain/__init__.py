"""Domain layer - Ordinal terms, formulas, records and errors.

This package contains:
- Terms: OrdTerm variants, OrdSeq, ThetaSet and purely syntactic helpers
- Formulas: literals, connectives and bounded/second-order quantifiers
- Entities: HullQuery, MhDescriptor, BoundState and the other records
- Value Objects: Ordering, Connective, IndexKind
- Exceptions: DomainException and subclasses

Nothing here depends on the order; comparison lives in the services layer.
"""

from .terms import (
    OrdTerm,
    Zero,
    One,
    Omega1,
    BigK,
    BigI,
    Sum,
    WExp,
    Veblen,
    RegSucc,
    PsiReg,
    PsiI,
    PsiK,
    OrdSeq,
    ThetaSet,
    ZERO,
    ONE,
    OMEGA1,
    BIG_K,
    BIG_I,
    nat,
    kset,
    regular_designated,
    term_size,
)
from .formulas import (
    Formula,
    Var,
    LI,
    LitIn,
    LitP,
    LitPI,
    LitReg,
    LitR,
    LitX,
    Or,
    And,
    ExB,
    AllB,
    Ex2,
    All2,
    negate,
)
from .entities import (
    Violation,
    ValidityReport,
    HullQuery,
    HullClause,
    MhDescriptor,
    ResolventDescriptor,
    AbgamRecord,
    SideCondition,
    BoundState,
    ClassifyResult,
    IndexDescriptor,
    AssignShape,
    SuiteResult,
)
from .value_objects import Ordering, Connective, IndexKind
from .exceptions import (
    DomainException,
    ValidationError,
    ConfigurationError,
    ParseError,
    IncomparableSubscript,
    SizeLimitExceeded,
    CeilingExceeded,
    NotACollapse,
    LengthMismatch,
    NotComponentwiseLess,
    IndexOutOfRange,
    ShapeMismatch,
    InvalidRegular,
    TheoryFloor,
    BoundViolated,
    NotRelativizable,
    UndecidableLiteral,
    PropertyViolation,
)

__all__ = [
    # Terms
    "OrdTerm",
    "Zero",
    "One",
    "Omega1",
    "BigK",
    "BigI",
    "Sum",
    "WExp",
    "Veblen",
    "RegSucc",
    "PsiReg",
    "PsiI",
    "PsiK",
    "OrdSeq",
    "ThetaSet",
    "ZERO",
    "ONE",
    "OMEGA1",
    "BIG_K",
    "BIG_I",
    "nat",
    "kset",
    "regular_designated",
    "term_size",
    # Formulas
    "Formula",
    "Var",
    "LI",
    "LitIn",
    "LitP",
    "LitPI",
    "LitReg",
    "LitR",
    "LitX",
    "Or",
    "And",
    "ExB",
    "AllB",
    "Ex2",
    "All2",
    "negate",
    # Entities
    "Violation",
    "ValidityReport",
    "HullQuery",
    "HullClause",
    "MhDescriptor",
    "ResolventDescriptor",
    "AbgamRecord",
    "SideCondition",
    "BoundState",
    "ClassifyResult",
    "IndexDescriptor",
    "AssignShape",
    "SuiteResult",
    # Value Objects
    "Ordering",
    "Connective",
    "IndexKind",
    # Exceptions
    "DomainException",
    "ValidationError",
    "ConfigurationError",
    "ParseError",
    "IncomparableSubscript",
    "SizeLimitExceeded",
    "CeilingExceeded",
    "NotACollapse",
    "LengthMismatch",
    "NotComponentwiseLess",
    "IndexOutOfRange",
    "ShapeMismatch",
    "InvalidRegular",
    "TheoryFloor",
    "BoundViolated",
    "NotRelativizable",
    "UndecidableLiteral",
    "PropertyViolation",
]
