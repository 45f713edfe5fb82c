"""Validation Service - Structural invariants and the normal-form predicate.

validate() walks a term post-order and collects every broken invariant; it
never raises for domain reasons. is_normal_form() adds the canonical-form
rules that rule out a second name for the same ordinal.
"""

from typing import Callable, List, Optional

from ..domain.entities import ValidityReport, Violation
from ..domain.exceptions import DomainException, IncomparableSubscript
from ..domain.terms import (
    BIG_K,
    BigK,
    OrdTerm,
    PsiI,
    PsiK,
    PsiReg,
    RegSucc,
    Sum,
    Veblen,
    WExp,
    Zero,
    is_atom,
    is_epsilon,
    is_principal,
    regular_designated,
    subterms,
)
from ..domain.value_objects import Ordering
from ..infrastructure.config import get_settings
from ..infrastructure.logging import get_logger
from .arithmetic_service import is_veblen_fixed_point
from .order_service import ceiling, cmp, collapse_arg_bound

logger = get_logger(__name__)

LT, EQ, GT = Ordering.LT, Ordering.EQ, Ordering.GT

NfCheck = Callable[[OrdTerm, int], bool]


def _nf_valid_default(term: OrdTerm, big_n: int) -> bool:
    from .hull_service import nf_valid

    return nf_valid(term, big_n=big_n)


def check_node(
    term: OrdTerm,
    big_n: Optional[int] = None,
    nf_check: Optional[NfCheck] = None,
) -> Optional[Violation]:
    """Check the invariants owned by the root node of ``term`` only.

    Children are assumed valid. Returns the first violation or None.
    """
    big_n = get_settings().big_n if big_n is None else big_n
    nf_check = nf_check or _nf_valid_default
    try:
        return _check_node(term, big_n, nf_check)
    except IncomparableSubscript as e:
        return Violation("incomparable", term, e.message)
    except DomainException as e:
        return Violation("malformed", term, e.message)


def _check_node(term: OrdTerm, big_n: int, nf_check: NfCheck) -> Optional[Violation]:
    if isinstance(term, Sum):
        if len(term.parts) < 2:
            return Violation("sum_arity", term, "sum needs at least two parts")
        for part in term.parts:
            if not is_principal(part):
                return Violation("sum_parts", term, f"part '{part}' is not additively principal")
        for left, right in zip(term.parts, term.parts[1:]):
            if cmp(left, right) is LT:
                return Violation("sum_order", term, "parts not non-increasing")
        return None
    if isinstance(term, WExp) and isinstance(term.exponent, Zero):
        return Violation("wexp_zero", term, "w^0 must be stored as 1")
    if isinstance(term, Veblen) and isinstance(term.index, Zero):
        return Violation("veblen_zero", term, "phi(0, b) must be stored as w^b")
    if isinstance(term, RegSucc):
        if not isinstance(term.base, (BigK, RegSucc, PsiI)) or (
            isinstance(term.base, RegSucc) and not regular_designated(term.base)
        ):
            return Violation("regsucc_base", term, f"base '{term.base}' is not K or designated")
        return None
    if isinstance(term, (PsiReg, PsiI, PsiK)):
        return _check_collapse(term, big_n, nf_check)
    return None


def _check_collapse(term: OrdTerm, big_n: int, nf_check: NfCheck) -> Optional[Violation]:
    if term.n < 1:
        return Violation("subscript", term, "subscript must be positive")
    if isinstance(term, PsiReg) and not regular_designated(term.kappa):
        return Violation("psi_kappa", term, f"'{term.kappa}' is not a designated regular")
    if isinstance(term, PsiK):
        if len(term.seq) != big_n:
            return Violation("psik_length", term, f"lh(seq)={len(term.seq)} but N={big_n}")
        for item in term.seq:
            if cmp(item, term.arg) is GT:
                return Violation("psik_components", term, f"component '{item}' exceeds arg")
        theta = tuple(term.theta)
        for element in theta:
            if cmp(element, BIG_K) is GT:
                return Violation("theta_bound", term, f"parameter '{element}' exceeds K")
        for left, right in zip(theta, theta[1:]):
            if cmp(left, right) is not LT:
                return Violation("theta_order", term, "parameters not sorted and distinct")
    if cmp(term.arg, collapse_arg_bound(term.n)) is not LT:
        return Violation("collapse_arg", term, f"arg not below w_{term.n + 1}(I+1)")
    if not nf_check(term, big_n):
        return Violation("nf_hull", term, "arg fails the normal-form hull condition")
    return None


def validate(term: OrdTerm, big_n: Optional[int] = None) -> ValidityReport:
    """Check every structural invariant of ``term``.

    Args:
        term: Term to check
        big_n: Length required of PsiK sequences (defaults to settings)

    Returns:
        ValidityReport listing violations in post-order
    """
    settings = get_settings()
    big_n = settings.big_n if big_n is None else big_n
    violations: List[Violation] = []
    for sub in subterms(term):
        found = check_node(sub, big_n)
        if found is not None:
            violations.append(found)
    if not violations:
        try:
            if cmp(term, ceiling(settings.max_tower)) is not LT:
                violations.append(
                    Violation("ceiling", term, f"not below w_{settings.max_tower}(I+1)")
                )
        except IncomparableSubscript as e:
            violations.append(Violation("incomparable", term, e.message))
    report = ValidityReport(tuple(violations))
    if not report.ok:
        logger.debug("validation_failed", term=str(term), first=str(report.first))
    return report


def canonical_node(term: OrdTerm) -> bool:
    """Canonical-form rules for the root node: no fixed point stored twice."""
    if isinstance(term, WExp):
        return not is_epsilon(term.exponent)
    if isinstance(term, Veblen):
        if is_veblen_fixed_point(term.index, term.arg):
            return False
        return not (isinstance(term.arg, Zero) and is_atom(term.index))
    return True


def is_normal_form(term: OrdTerm, big_n: Optional[int] = None) -> bool:
    """True iff ``term`` validates and every node is in canonical form."""
    try:
        if not all(canonical_node(sub) for sub in subterms(term)):
            return False
    except IncomparableSubscript:
        return False
    return validate(term, big_n).ok
