"""Formula Service - Coefficients, ranks and classes of second-order formulas.

This service handles:
- The coefficient sets kE, kR and their union
- The rank of a formula, including the two exempted predicate shapes
- Class membership: Delta_0(lambda), Sigma_m / Pi_m levels of pure formulas,
  the Sigma^{Sigma_{n+1}}(lambda) class and Pi^1_k(lambda) levels
- Relativization of lambda-bounded formulas to a smaller regular
- The disjunction/conjunction shape of a formula and its components
"""

from functools import lru_cache
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from ..domain.entities import AssignShape, ClassifyResult, IndexDescriptor
from ..domain.exceptions import (
    IncomparableSubscript,
    NotRelativizable,
    UndecidableLiteral,
    ValidationError,
)
from ..domain.formulas import (
    EMPTY_TAG,
    LITERAL_TYPES,
    All2,
    AllB,
    And,
    Arg,
    Bound,
    Ex2,
    ExB,
    Formula,
    LitIn,
    LitP,
    LitPI,
    LitR,
    LitReg,
    LitX,
    Or,
    UniverseBound,
    Var,
)
from ..domain.terms import (
    BIG_I,
    BIG_K,
    OMEGA1,
    ONE,
    ZERO,
    BigI,
    BigK,
    Omega1,
    OrdTerm,
    PsiI,
    PsiK,
    PsiReg,
    RegSucc,
    regular_designated,
)
from ..domain.value_objects import Connective, IndexKind, Ordering
from ..infrastructure.logging import get_logger
from .arithmetic_service import add, omega_mul
from .order_service import cmp, max_term

logger = get_logger(__name__)

LT, EQ, GT = Ordering.LT, Ordering.EQ, Ordering.GT

Levels = Tuple[int, int]

_FINITE_0 = IndexDescriptor(IndexKind.FINITE, size=0)
_FINITE_2 = IndexDescriptor(IndexKind.FINITE, size=2)
_POWERSET = IndexDescriptor(IndexKind.SYMBOLIC_POWERSET)

# Regular cardinals by construction; collapses below a designated regular are not.
_REGULAR_TYPES = (Omega1, BigK, BigI, RegSucc, PsiI, PsiK)


# -- traversal helpers ------------------------------------------------


def _literal_args(literal: Formula) -> Tuple[Arg, ...]:
    if isinstance(literal, LitIn):
        return (literal.a, literal.b)
    if isinstance(literal, LitP):
        return (literal.t1, literal.t2, literal.t3)
    return (literal.t,)


def rk_l(x: object) -> OrdTerm:
    """Rank of a set: 0 for variables, I for the universe, the term itself otherwise."""
    if isinstance(x, Var):
        return ZERO
    if isinstance(x, UniverseBound):
        return BIG_I
    return x


def _terms(values: Iterable[object]) -> FrozenSet[OrdTerm]:
    return frozenset(v for v in values if isinstance(v, OrdTerm))


def _has_universe_bound(formula: Formula) -> bool:
    if isinstance(formula, LITERAL_TYPES):
        return False
    if isinstance(formula, (Or, And)):
        return _has_universe_bound(formula.left) or _has_universe_bound(formula.right)
    if isinstance(formula, (ExB, AllB)):
        return isinstance(formula.bound, UniverseBound) or _has_universe_bound(formula.body)
    return _has_universe_bound(formula.body)


def _is_pure(formula: Formula) -> bool:
    """Built from membership literals and first-order quantifiers only."""
    if isinstance(formula, LitIn):
        return True
    if isinstance(formula, (Or, And)):
        return _is_pure(formula.left) and _is_pure(formula.right)
    if isinstance(formula, (ExB, AllB)):
        return _is_pure(formula.body)
    return False


# -- coefficient sets -------------------------------------------------


def k_e(formula: Formula) -> FrozenSet[OrdTerm]:
    """Terms occurring as sets: literal arguments, bounds and predicate bounds, plus 0."""
    if isinstance(formula, LitR):
        return _terms((formula.t,)) | {ZERO}
    if isinstance(formula, LITERAL_TYPES):
        return _terms(_literal_args(formula)) | {ZERO}
    if isinstance(formula, (Or, And)):
        return k_e(formula.left) | k_e(formula.right)
    if isinstance(formula, (ExB, AllB)):
        return _terms((formula.bound,)) | k_e(formula.body)
    return frozenset({formula.kappa}) | k_e(formula.body)


def k_r(formula: Formula) -> FrozenSet[OrdTerm]:
    """Restriction bounds of R-literals, plus 0."""
    if isinstance(formula, LitR):
        return frozenset({formula.kappa, ZERO})
    if isinstance(formula, LITERAL_TYPES):
        return frozenset({ZERO})
    if isinstance(formula, (Or, And)):
        return k_r(formula.left) | k_r(formula.right)
    return k_r(formula.body)


def k_all(formula: Formula) -> FrozenSet[OrdTerm]:
    return k_e(formula) | k_r(formula)


# -- substitution -----------------------------------------------------


def substitute(formula: Formula, var: str, term: OrdTerm) -> Formula:
    """Replace the free individual variable ``var`` by ``term``."""

    def arg(x: Arg) -> Arg:
        return term if isinstance(x, Var) and x.name == var else x

    if isinstance(formula, LitIn):
        return LitIn(arg(formula.a), arg(formula.b), formula.positive)
    if isinstance(formula, LitP):
        return LitP(arg(formula.t1), arg(formula.t2), arg(formula.t3), formula.positive)
    if isinstance(formula, LitPI):
        return LitPI(arg(formula.t), formula.n, formula.positive)
    if isinstance(formula, LitReg):
        return LitReg(arg(formula.t), formula.positive)
    if isinstance(formula, LitR):
        return LitR(formula.tag, formula.kappa, arg(formula.t), formula.positive)
    if isinstance(formula, LitX):
        return LitX(formula.index, arg(formula.t), formula.positive)
    if isinstance(formula, (Or, And)):
        return type(formula)(
            substitute(formula.left, var, term), substitute(formula.right, var, term)
        )
    if isinstance(formula, (ExB, AllB)):
        bound = arg(formula.bound) if isinstance(formula.bound, Var) else formula.bound
        if formula.var == var:
            return type(formula)(formula.var, bound, formula.body)
        return type(formula)(formula.var, bound, substitute(formula.body, var, term))
    return type(formula)(formula.kappa, substitute(formula.body, var, term), formula.index)


def substitute_second(formula: Formula, index: int, tag: str, kappa: OrdTerm) -> Formula:
    """Replace the predicate variable X_index by the set named ``tag`` below ``kappa``."""
    if isinstance(formula, LitX):
        if formula.index != index:
            return formula
        return LitR(tag, kappa, formula.t, formula.positive)
    if isinstance(formula, LITERAL_TYPES):
        return formula
    if isinstance(formula, (Or, And)):
        return type(formula)(
            substitute_second(formula.left, index, tag, kappa),
            substitute_second(formula.right, index, tag, kappa),
        )
    if isinstance(formula, (ExB, AllB)):
        return type(formula)(
            formula.var, formula.bound, substitute_second(formula.body, index, tag, kappa)
        )
    if formula.index == index:
        return formula
    return type(formula)(
        formula.kappa, substitute_second(formula.body, index, tag, kappa), formula.index
    )


def _empty_instance(formula: Formula) -> Formula:
    """Body of a predicate quantifier with its variable set to the empty set."""
    return substitute_second(formula.body, formula.index, EMPTY_TAG, formula.kappa)


def _zero_instance(formula: Formula) -> Formula:
    return substitute(formula.body, formula.var, ZERO)


# -- validity ---------------------------------------------------------


def validate_formula(formula: Formula, scope: Sequence[str] = ()) -> Formula:
    """Check that ``formula`` is a closed sentence over terms below I.

    Raises:
        ValidationError: On a free variable, a constant not below I, or a
            predicate bound outside (w1, K]
    """

    def check_arg(x: object) -> None:
        if isinstance(x, Var):
            if x.name not in scope:
                raise ValidationError(f"Free variable '{x}'", field="free_variable", value=x.name)
        elif isinstance(x, OrdTerm) and cmp(x, BIG_I) is not LT:
            raise ValidationError(f"Constant '{x}' is not below I", field="constant", value=str(x))

    if isinstance(formula, LITERAL_TYPES):
        for x in _literal_args(formula):
            check_arg(x)
        if isinstance(formula, LitPI) and formula.n < 1:
            raise ValidationError("PI subscript must be positive", field="subscript")
        if isinstance(formula, LitR):
            check_arg(formula.kappa)
        return formula
    if isinstance(formula, (Or, And)):
        validate_formula(formula.left, scope)
        validate_formula(formula.right, scope)
        return formula
    if isinstance(formula, (ExB, AllB)):
        if not isinstance(formula.bound, UniverseBound):
            check_arg(formula.bound)
        validate_formula(formula.body, tuple(scope) + (formula.var,))
        return formula
    if cmp(formula.kappa, OMEGA1) is not GT or cmp(formula.kappa, BIG_K) is GT:
        raise ValidationError(
            f"Predicate bound '{formula.kappa}' must lie in (w1, K]",
            field="predicate_bound",
            value=str(formula.kappa),
        )
    validate_formula(formula.body, scope)
    return formula


# -- rank -------------------------------------------------------------


def _is_var(x: object, name: str) -> bool:
    return isinstance(x, Var) and x.name == name


def _below_i(x: object) -> bool:
    return isinstance(x, OrdTerm) and cmp(x, BIG_I) is LT


def _pi_shape(formula: Formula) -> bool:
    """ex x<L. (b in x & PI(n; x)), or its dual."""
    if isinstance(formula, ExB):
        junction, positive = And, True
    elif isinstance(formula, AllB):
        junction, positive = Or, False
    else:
        return False
    if not isinstance(formula.bound, UniverseBound) or not isinstance(formula.body, junction):
        return False
    member, predicate = formula.body.left, formula.body.right
    x = formula.var
    return (
        isinstance(member, LitIn)
        and member.positive is positive
        and _below_i(member.a)
        and _is_var(member.b, x)
        and isinstance(predicate, LitPI)
        and predicate.positive is positive
        and _is_var(predicate.t, x)
    )


def _p_shape(formula: Formula) -> Optional[Tuple[OrdTerm, OrdTerm]]:
    """ex x<lam. ex y<lam. (b in x & P(lam, x, y)), or its dual; returns (lam, b)."""
    if isinstance(formula, ExB):
        quantifier, junction, positive = ExB, And, True
    elif isinstance(formula, AllB):
        quantifier, junction, positive = AllB, Or, False
    else:
        return None
    lam, inner = formula.bound, formula.body
    if not (isinstance(lam, OrdTerm) and regular_designated(lam)):
        return None
    if not isinstance(inner, quantifier) or inner.bound != lam:
        return None
    if not isinstance(inner.body, junction):
        return None
    member, predicate = inner.body.left, inner.body.right
    x, y = formula.var, inner.var
    if x == y:
        return None
    shaped = (
        isinstance(member, LitIn)
        and member.positive is positive
        and isinstance(member.a, OrdTerm)
        and _is_var(member.b, x)
        and isinstance(predicate, LitP)
        and predicate.positive is positive
        and predicate.t1 == lam
        and _is_var(predicate.t2, x)
        and _is_var(predicate.t3, y)
    )
    return (lam, member.a) if shaped else None


def is_exempt_shape(formula: Formula) -> bool:
    """True for the P-shape, whose components need not drop in rank."""
    return _p_shape(formula) is not None


@lru_cache(maxsize=1 << 16)
def rank(formula: Formula) -> OrdTerm:
    """Rank of ``formula``.

    Literals take the largest rank of their coefficients; connectives add one;
    a bounded quantifier over ``b`` ranks at least omega * rk_L(b); a predicate
    quantifier below kappa ranks at least kappa.
    """
    if isinstance(formula, LITERAL_TYPES):
        return max_term((rk_l(t) for t in k_all(formula)), default=ZERO)
    if isinstance(formula, (Or, And)):
        return add(max_term((rank(formula.left), rank(formula.right))), ONE)
    if isinstance(formula, (ExB, AllB)):
        if _pi_shape(formula):
            return BIG_I
        shaped = _p_shape(formula)
        if shaped is not None:
            lam, b = shaped
            return max_term((add(lam, ONE), rk_l(b)))
        return max_term(
            (omega_mul(rk_l(formula.bound)), add(rank(_zero_instance(formula)), ONE))
        )
    return max_term((formula.kappa, add(rank(_empty_instance(formula)), ONE)))


# -- classes ----------------------------------------------------------


def is_delta0(formula: Formula, lam: OrdTerm) -> bool:
    """Delta_0(lambda): no unbounded quantifier, kR ranks at most lambda, kE ranks below it."""
    if _has_universe_bound(formula):
        return False
    if any(cmp(rk_l(t), lam) is GT for t in k_r(formula)):
        return False
    return all(cmp(rk_l(t), lam) is LT for t in k_e(formula))


def sigma_levels(formula: Formula) -> Optional[Levels]:
    """Least (s, p) with a pure formula in Sigma_s and Pi_p; None if impure.

    Bounded quantifiers keep the level of their body.
    """
    if not _is_pure(formula):
        return None
    return _levels(formula)


def _levels(formula: Formula) -> Levels:
    if isinstance(formula, LitIn):
        return 0, 0
    if isinstance(formula, (Or, And)):
        left, right = _levels(formula.left), _levels(formula.right)
        return max(left[0], right[0]), max(left[1], right[1])
    s, p = _levels(formula.body)
    if not isinstance(formula.bound, UniverseBound):
        return s, p
    if isinstance(formula, ExB):
        sigma = max(1, min(s, p + 1))
        return sigma, sigma + 1
    pi = max(1, min(p, s + 1))
    return pi + 1, pi


def is_sigma_sigma(formula: Formula, lam: OrdTerm, n: int) -> bool:
    """Membership in Sigma^{Sigma_{n+1}}(lambda)."""
    levels = sigma_levels(formula)
    if levels is not None and levels[0] <= n + 1:
        return True
    if isinstance(formula, LitX):
        return False
    if isinstance(formula, LitR):
        return cmp(formula.kappa, lam) is LT
    if isinstance(formula, LITERAL_TYPES):
        return True
    if isinstance(formula, (Or, And)):
        return is_sigma_sigma(formula.left, lam, n) and is_sigma_sigma(formula.right, lam, n)
    if isinstance(formula, ExB):
        return cmp(rk_l(formula.bound), lam) is not GT and is_sigma_sigma(
            _zero_instance(formula), lam, n
        )
    if isinstance(formula, AllB):
        return cmp(rk_l(formula.bound), lam) is LT and is_sigma_sigma(
            _zero_instance(formula), lam, n
        )
    return cmp(formula.kappa, lam) is LT and is_sigma_sigma(_empty_instance(formula), lam, n)


def _first_order_bound(bound: Bound, lam: OrdTerm) -> bool:
    """Bounds a quantifier may carry inside a Pi^1_0(lambda) sentence."""
    if isinstance(bound, UniverseBound):
        return False
    return cmp(rk_l(bound), lam) is not GT


def _in_pi10(formula: Formula, lam: OrdTerm) -> bool:
    if is_delta0(formula, lam):
        return True
    if isinstance(formula, LITERAL_TYPES):
        return False
    if isinstance(formula, (Or, And)):
        return _in_pi10(formula.left, lam) and _in_pi10(formula.right, lam)
    if isinstance(formula, (ExB, AllB)):
        return _first_order_bound(formula.bound, lam) and _in_pi10(formula.body, lam)
    return cmp(formula.kappa, lam) is LT and _in_pi10(formula.body, lam)


def pi1_levels(formula: Formula, lam: OrdTerm) -> Optional[Levels]:
    """Least (s, p) with ``formula`` in Sigma^1_s(lambda) and Pi^1_p(lambda).

    None when ``formula`` lies in no such class.
    """
    if _in_pi10(formula, lam):
        return 0, 0
    if isinstance(formula, LITERAL_TYPES):
        return None
    if isinstance(formula, (Or, And)):
        left, right = pi1_levels(formula.left, lam), pi1_levels(formula.right, lam)
        if left is None or right is None:
            return None
        return max(left[0], right[0]), max(left[1], right[1])
    if isinstance(formula, (ExB, AllB)):
        if not _first_order_bound(formula.bound, lam):
            return None
        return pi1_levels(formula.body, lam)
    order = cmp(formula.kappa, lam)
    if order is GT:
        return None
    body = pi1_levels(formula.body, lam)
    if body is None or order is LT:
        return body
    s, p = body
    if isinstance(formula, Ex2):
        sigma = max(1, min(s, p + 1))
        return sigma, sigma + 1
    pi = max(1, min(p, s + 1))
    return pi + 1, pi


def classify(formula: Formula, lam: OrdTerm, n: int) -> ClassifyResult:
    """Class membership of ``formula`` relative to the regular ``lam`` and level ``n``."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    levels = pi1_levels(formula, lam)
    return ClassifyResult(
        is_delta0_lambda=is_delta0(formula, lam),
        is_sigma_sigma=is_sigma_sigma(formula, lam, n),
        pi1_level=None if levels is None else levels[1],
    )


# -- relativization ---------------------------------------------------


def relativization_side_conditions(formula: Formula, kappa: OrdTerm, lam: OrdTerm) -> bool:
    """kR ranks below lambda are at most kappa; kE ranks other than lambda are below kappa."""
    for t in k_r(formula):
        r = rk_l(t)
        if cmp(r, lam) is LT and cmp(r, kappa) is GT:
            return False
    for t in k_e(formula):
        r = rk_l(t)
        if cmp(r, lam) is not EQ and cmp(r, kappa) is not LT:
            return False
    return True


def relativize(formula: Formula, kappa: OrdTerm, lam: OrdTerm) -> Formula:
    """Restrict every lambda-bounded quantifier and R-literal of ``formula`` to ``kappa``.

    Raises:
        NotRelativizable: Unless w1 < kappa < lambda, or if ``formula`` has an
            unbounded quantifier
    """
    if cmp(OMEGA1, kappa) is not LT or cmp(kappa, lam) is not LT:
        raise NotRelativizable(f"need w1 < {kappa} < {lam}")
    if _has_universe_bound(formula):
        raise NotRelativizable("formula has an unbounded quantifier")
    result = _relativize(formula, kappa, lam)
    logger.debug("relativized", kappa=str(kappa), lam=str(lam))
    return result


def _relativize(formula: Formula, kappa: OrdTerm, lam: OrdTerm) -> Formula:
    if isinstance(formula, LitR):
        if formula.kappa != lam:
            return formula
        return LitR(formula.tag, kappa, formula.t, formula.positive)
    if isinstance(formula, LITERAL_TYPES):
        return formula
    if isinstance(formula, (Or, And)):
        return type(formula)(
            _relativize(formula.left, kappa, lam), _relativize(formula.right, kappa, lam)
        )
    if isinstance(formula, (ExB, AllB)):
        bound = kappa if formula.bound == lam else formula.bound
        return type(formula)(formula.var, bound, _relativize(formula.body, kappa, lam))
    bound = kappa if formula.kappa == lam else formula.kappa
    return type(formula)(bound, _relativize(formula.body, kappa, lam), formula.index)


# -- assignment -------------------------------------------------------


def literal_truth(literal: Formula) -> bool:
    """Truth of a closed literal decidable from the terms alone.

    Raises:
        UndecidableLiteral: For P, PI, X and named-subset R literals, for
            variables, and for Reg on collapses below a designated regular
    """
    if any(isinstance(x, Var) for x in _literal_args(literal)):
        raise UndecidableLiteral(str(literal))
    if isinstance(literal, LitIn):
        try:
            holds = cmp(literal.a, literal.b) is LT
        except IncomparableSubscript:
            raise UndecidableLiteral(str(literal))
    elif isinstance(literal, LitReg):
        if isinstance(literal.t, PsiReg):
            raise UndecidableLiteral(str(literal))
        holds = isinstance(literal.t, _REGULAR_TYPES)
    elif isinstance(literal, LitR) and literal.tag == EMPTY_TAG:
        holds = False
    else:
        raise UndecidableLiteral(str(literal))
    return holds is literal.positive


def assign_shape(formula: Formula, n: int) -> AssignShape:
    """Connective and index set of ``formula`` read as an infinitary formula.

    Raises:
        UndecidableLiteral: For literals whose truth needs set semantics
    """
    if isinstance(formula, LITERAL_TYPES):
        if literal_truth(formula):
            return AssignShape(Connective.CONJ, _FINITE_0)
        return AssignShape(Connective.DISJ, _FINITE_0)
    if isinstance(formula, Or):
        return AssignShape(Connective.DISJ, _FINITE_2)
    if isinstance(formula, And):
        return AssignShape(Connective.CONJ, _FINITE_2)
    if isinstance(formula, Ex2):
        return AssignShape(Connective.DISJ, _POWERSET)
    if isinstance(formula, All2):
        return AssignShape(Connective.CONJ, _POWERSET)
    levels = sigma_levels(formula)
    if isinstance(formula, ExB):
        if levels is not None and levels[0] <= n:
            return AssignShape(
                Connective.DISJ, IndexDescriptor(IndexKind.SYMBOLIC_MU, bound=formula.bound)
            )
        return AssignShape(
            Connective.DISJ, IndexDescriptor(IndexKind.ELEMENTS_BELOW, bound=formula.bound)
        )
    if levels is not None and levels[1] <= n:
        return AssignShape(
            Connective.CONJ, IndexDescriptor(IndexKind.SYMBOLIC_MU, bound=formula.bound)
        )
    return AssignShape(
        Connective.CONJ, IndexDescriptor(IndexKind.ELEMENTS_BELOW, bound=formula.bound)
    )


def components(
    formula: Formula,
    samples: Iterable[OrdTerm] = (),
    tags: Iterable[str] = (),
) -> List[Formula]:
    """Components of ``formula`` reachable with the given witnesses.

    Quantifiers over individuals are instantiated at the ``samples`` lying
    below their bound; predicate quantifiers at the empty set and the named
    subsets ``tags``. Literals have none.
    """
    if isinstance(formula, LITERAL_TYPES):
        return []
    if isinstance(formula, (Or, And)):
        return [formula.left, formula.right]
    if isinstance(formula, (ExB, AllB)):
        bound = rk_l(formula.bound) if not isinstance(formula.bound, Var) else None
        if bound is None:
            return []
        picked = []
        for c in samples:
            try:
                if cmp(c, bound) is LT:
                    picked.append(substitute(formula.body, formula.var, c))
            except IncomparableSubscript:
                continue
        return picked
    names = [EMPTY_TAG] + [tag for tag in tags if tag != EMPTY_TAG]
    return [substitute_second(formula.body, formula.index, tag, formula.kappa) for tag in names]
