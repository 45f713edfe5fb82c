"""Hull Service - Term-level Skolem hulls and collapse normal forms.

This service handles:
- Deciding membership of a term in H_{alpha,n}[theta, kappa](threshold)
- Reporting the clause that admitted a term, with its premises
- The normal-form condition of collapse terms
- Validated collapse constructors and resolvent descriptors
"""

from typing import Iterable, Optional, Tuple

from ..domain.entities import HullClause, HullQuery, MhDescriptor, ResolventDescriptor
from ..domain.exceptions import (
    IncomparableSubscript,
    NotACollapse,
    NotComponentwiseLess,
    ValidationError,
)
from ..domain.terms import (
    BIG_I,
    BIG_K,
    ONE,
    ZERO,
    BigI,
    BigK,
    Omega1,
    One,
    OrdSeq,
    OrdTerm,
    PsiI,
    PsiK,
    PsiReg,
    RegSucc,
    Sum,
    ThetaSet,
    Veblen,
    WExp,
    Zero,
)
from ..domain.value_objects import Ordering
from ..infrastructure.config import get_settings
from ..infrastructure.logging import get_logger
from .mahlo_service import bullet_sub, check_lengths
from .order_service import cmp, raw_tower, theta_set

logger = get_logger(__name__)

LT, EQ, GT = Ordering.LT, Ordering.EQ, Ordering.GT

_HULL_CONSTANTS = (Zero, Omega1, BigK, BigI)


def _below(s: OrdTerm, t: OrdTerm) -> bool:
    try:
        return cmp(s, t) is LT
    except IncomparableSubscript:
        return False


def _exponent_bound(n: int) -> OrdTerm:
    """omega_n(I+1): exponents and Veblen arguments admitted at subscript n."""
    return raw_tower(n, Sum((BIG_I, ONE)))


def hull_clause(term: OrdTerm, query: HullQuery) -> Optional[HullClause]:
    """The clause admitting ``term`` into the hull, or None when it is out.

    Args:
        term: Candidate member
        query: Hull parameters

    Returns:
        HullClause naming the rule and the premises it relied on
    """
    if isinstance(term, _HULL_CONSTANTS):
        return HullClause("constant")
    if term in query.theta or (query.kappa_ctx is not None and term == query.kappa_ctx):
        return HullClause("parameter")
    if _below(term, query.threshold):
        return HullClause("threshold")

    def closed(premises: Tuple[OrdTerm, ...], name: str) -> Optional[HullClause]:
        if all(in_hull(p, query) for p in premises):
            return HullClause(name, premises)
        return None

    if isinstance(term, Sum):
        return closed(term.parts, "sum")
    if isinstance(term, One):
        return HullClause("exponential", (ZERO,))
    if isinstance(term, WExp):
        if not _below(term.exponent, _exponent_bound(query.n)):
            return None
        return closed((term.exponent,), "exponential")
    if isinstance(term, Veblen):
        bound = _exponent_bound(query.n)
        if not (_below(term.index, bound) and _below(term.arg, bound)):
            return None
        return closed((term.index, term.arg), "veblen")
    if isinstance(term, RegSucc):
        return closed((term.base,), "successor")
    if isinstance(term, (PsiI, PsiReg, PsiK)):
        if term.n != query.n or not _below(term.arg, query.alpha):
            return None
        if isinstance(term, PsiI):
            return closed((term.arg,), "psi_i")
        if isinstance(term, PsiReg):
            return closed((term.kappa, term.arg), "psi_reg")
        return closed(tuple(term.seq) + tuple(term.theta) + (term.arg,), "psi_k")
    return None


def in_hull(term: OrdTerm, query: HullQuery) -> bool:
    """Decide term-level membership of ``term`` in the hull described by ``query``."""
    return hull_clause(term, query) is not None


def nf_valid(term: OrdTerm, big_n: Optional[int] = None) -> bool:
    """Normal-form condition of a collapse term.

    The argument must not lie below the collapse value (one name per
    ordinal, zero excepted) and must belong to the hull of stage ``arg``
    over everything below the collapse itself.

    Raises:
        NotACollapse: If ``term`` is not PsiReg, PsiI or PsiK
    """
    if not isinstance(term, (PsiReg, PsiI, PsiK)):
        raise NotACollapse(str(term))
    big_n = get_settings().big_n if big_n is None else big_n
    theta = ThetaSet()
    kappa_ctx: Optional[OrdTerm] = None
    if isinstance(term, PsiK):
        if len(term.seq) != big_n:
            return False
        if any(cmp(item, term.arg) is GT for item in term.seq):
            return False
        theta, kappa_ctx = term.theta, BIG_K
    elif isinstance(term, PsiReg):
        kappa_ctx = term.kappa
    if isinstance(term.arg, Zero):
        return True
    try:
        if cmp(term.arg, term) is LT:
            return False
    except IncomparableSubscript:
        return False
    query = HullQuery(alpha=term.arg, n=term.n, threshold=term, theta=theta, kappa_ctx=kappa_ctx)
    return in_hull(term.arg, query)


def _validated(term: OrdTerm, big_n: Optional[int]) -> OrdTerm:
    from .validation_service import validate

    report = validate(term, big_n)
    if not report.ok:
        first = report.first
        raise ValidationError(first.message, field=first.clause, value=str(first.subterm))
    return term


def psi_reg(kappa: OrdTerm, n: int, arg: OrdTerm) -> OrdTerm:
    """Validated collapse below a designated regular."""
    return _validated(PsiReg(kappa, n, arg), None)


def psi_i(n: int, arg: OrdTerm) -> OrdTerm:
    """Validated collapse below I."""
    return _validated(PsiI(n, arg), None)


def psi_k(
    n: int,
    seq: Iterable[OrdTerm],
    theta: Iterable[OrdTerm],
    arg: OrdTerm,
    big_n: Optional[int] = None,
) -> OrdTerm:
    """Validated collapse below K; ``theta`` is sorted and deduplicated first."""
    seq = seq if isinstance(seq, OrdSeq) else OrdSeq(tuple(seq))
    return _validated(PsiK(n, seq, theta_set(theta), arg), big_n)


def resolvent_descriptor(
    i: int,
    seq: OrdSeq,
    nu: OrdSeq,
    gamma: OrdTerm,
    theta: ThetaSet,
    n: int = 1,
    big_n: Optional[int] = None,
) -> ResolventDescriptor:
    """Describe the resolvent class of ``seq`` at level ``i`` with witnesses ``nu``.

    Lists the classes Mh_{i+j,n}((nu . seq)[j])[theta] for j < lh(seq) plus
    the hull condition at stage ``gamma``. Membership is not decided.

    Raises:
        LengthMismatch: If nu and seq differ in length
        NotComponentwiseLess: If some nu(j) is not below seq(j)
    """
    check_lengths(nu, seq)
    for index, (low, high) in enumerate(zip(nu, seq)):
        if cmp(low, high) is not LT:
            raise NotComponentwiseLess(index)
    big_n = i + len(seq) if big_n is None else big_n
    classes = tuple(
        MhDescriptor(k=i + j, n=n, seq=bullet_sub(nu, seq, j), theta=theta, big_n=big_n)
        for j in range(len(seq))
    )
    logger.debug("resolvent_descriptor", level=i, classes=len(classes))
    return ResolventDescriptor(classes=classes, hull_stage=gamma, n=n, theta=theta)
