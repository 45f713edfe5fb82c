"""Bound Service - Ordinal bookkeeping of cut elimination and collapsing.

A BoundState carries the annotations of a derivation (height, cut rank,
hull stage, theory level); each transformer maps them the way the
corresponding elimination step does. Side conditions that can be decided on
terms are computed; those quantifying over sets are recorded as assumed.

This service handles:
- Predicative cut elimination, collapsing and Mahlo lowering
- Weakening of annotations
- The embedding bound and the two end-to-end traces
"""

from dataclasses import replace
from typing import List, Optional

from ..domain.entities import BoundState, SideCondition
from ..domain.exceptions import (
    BoundViolated,
    IncomparableSubscript,
    InvalidRegular,
    ShapeMismatch,
    TheoryFloor,
)
from ..domain.terms import (
    BIG_I,
    BIG_K,
    OMEGA1,
    ONE,
    ZERO,
    OrdTerm,
    PsiK,
    PsiReg,
    RegSucc,
    Sum,
    ThetaSet,
    is_principal,
    nat,
    regular_designated,
)
from ..domain.value_objects import Ordering
from ..infrastructure.config import get_settings
from ..infrastructure.logging import get_logger
from .arithmetic_service import OMEGA, add, omega_mul, omega_tower, principal_mul, veblen, wexp
from .mahlo_service import abgam, mh_descriptor
from .order_service import cmp

logger = get_logger(__name__)

LT, EQ, GT = Ordering.LT, Ordering.EQ, Ordering.GT

K_PLUS = RegSucc(BIG_K)


def _leq(s: OrdTerm, t: OrdTerm) -> bool:
    return cmp(s, t) is not GT


def _with_conditions(state: BoundState, *conditions: SideCondition) -> BoundState:
    return replace(state, side_conditions=state.side_conditions + tuple(conditions))


def _log_step(state: BoundState) -> BoundState:
    logger.debug(
        "trace_step",
        note=state.note,
        height=str(state.height),
        cut_rank=str(state.cut_rank),
        hull_stage=str(state.hull_stage),
        theory=state.theory,
    )
    for condition in state.side_conditions:
        if not condition.holds:
            logger.warning("side_condition_failed", note=state.note, condition=condition.label)
    return state


def embedding_bound(
    m: int,
    p: int,
    n: int = 1,
    big_n: Optional[int] = None,
    theory: Optional[int] = None,
) -> BoundState:
    """Annotations of the embedded derivation: height I*2+p, cut rank I+m, hull stage 0."""
    if m < 0 or p < 0:
        raise ValueError(f"m and p must be non-negative, got m={m}, p={p}")
    big_n = get_settings().big_n if big_n is None else big_n
    state = BoundState(
        height=add(BIG_I, add(BIG_I, nat(p))),
        cut_rank=add(BIG_I, nat(m)),
        hull_stage=ZERO,
        theory=big_n if theory is None else theory,
        n=n,
        big_n=big_n,
        note="embedding",
    )
    return _log_step(state)


def predicative_elim(s: BoundState, a: OrdTerm, c: OrdTerm) -> BoundState:
    """Lower the cut rank from c + w^a to c.

    With a = 0 and c either I or lam+1 for a designated regular lam, the
    height b becomes w^b and the hull stage moves up by b. Otherwise the
    height becomes phi(a, b) with the hull unchanged.

    Raises:
        ShapeMismatch: If the cut rank is not c + w^a
    """
    expected = add(c, wexp(a))
    if cmp(s.cut_rank, expected) is not EQ:
        raise ShapeMismatch(str(expected), str(s.cut_rank))
    b = s.height
    if a == ZERO and (c == BIG_I or _is_regular_successor(c)):
        state = replace(
            s,
            height=wexp(b),
            cut_rank=c,
            hull_stage=add(s.hull_stage, b),
            note=f"predicative {s.cut_rank} -> {c}",
            side_conditions=(),
        )
        return _log_step(state)
    avoids_i = not (_leq(c, BIG_I) and cmp(BIG_I, expected) is LT)
    state = replace(
        s,
        height=veblen(a, b),
        cut_rank=c,
        note=f"predicative {s.cut_rank} -> {c}",
        side_conditions=(
            SideCondition(f"I not in [{c}, {expected})", avoids_i),
            SideCondition(f"no regular or regular+1 in [{c}, {expected}]", True, asserted=True),
        ),
    )
    return _log_step(state)


def _is_regular_successor(c: OrdTerm) -> bool:
    """c = lam + 1 for a designated regular lam."""
    return (
        isinstance(c, Sum)
        and len(c.parts) == 2
        and c.parts[1] == ONE
        and regular_designated(c.parts[0])
    )


def collapse_argument(s: BoundState, sigma: OrdTerm) -> OrdTerm:
    """a_hat = hull + w^(sigma * (1 + height)), the argument a collapse receives."""
    return add(s.hull_stage, wexp(principal_mul(sigma, add(ONE, s.height))))


def collapse_step(s: BoundState, sigma: OrdTerm, lam: OrdTerm, n: int) -> BoundState:
    """Collapse below the designated regular ``lam`` at subscript ``n``.

    With a_hat = hull + w^(sigma * (1 + height)) the height and cut rank both
    become psi(lam; n; a_hat) and the hull stage a_hat + 1.

    Raises:
        ShapeMismatch: If sigma is not additively principal
        InvalidRegular: If lam is not a designated regular
    """
    if not is_principal(sigma):
        raise ShapeMismatch("additively principal sigma", str(sigma))
    if not regular_designated(lam):
        raise InvalidRegular(str(lam))
    a_hat = collapse_argument(s, sigma)
    collapsed = PsiReg(lam, n, a_hat)
    conditions = [
        SideCondition(f"{lam} <= {sigma}", _leq(lam, sigma)),
        SideCondition(f"sequent in Sigma^Sigma_{n + 1}({lam})", True, asserted=True),
    ]
    if lam == OMEGA1:
        conditions.append(SideCondition("theory level -2 below w1", s.theory == -2))
    state = replace(
        s,
        height=collapsed,
        cut_rank=collapsed,
        hull_stage=add(a_hat, ONE),
        n=n,
        note=f"collapse below {lam} at n={n}",
        side_conditions=tuple(conditions),
    )
    return _log_step(state)


def lower_mahlo(s: BoundState, kappa: OrdTerm) -> BoundState:
    """Trade one level of indescribability for a cut rank ``kappa``.

    Height a becomes kappa + w*a, the hull stage moves up by a, and the
    theory level drops by one.

    Raises:
        TheoryFloor: If the theory level is not positive
        ShapeMismatch: If the cut rank is not K
        BoundViolated: If the height exceeds a_n
    """
    if s.theory <= 0:
        raise TheoryFloor(s.theory)
    if s.cut_rank != BIG_K:
        raise ShapeMismatch(str(BIG_K), str(s.cut_rank))
    record = abgam(s.n, s.big_n)
    if cmp(s.height, record.a) is GT:
        raise BoundViolated("height", str(s.height), str(record.a))
    a_hat = add(s.hull_stage, s.height)
    level = s.theory - 1
    conditions = [
        SideCondition(
            f"hull {a_hat} <= gamma_{{{level},{s.n}}}", _leq(a_hat, record.gamma[level])
        )
    ]
    if kappa != BIG_K:
        descriptor = mh_descriptor(level, s.n, record.alpha_vec[level], ThetaSet(), s.big_n)
        conditions.append(SideCondition(f"{kappa} in {descriptor}", True, asserted=True))
    state = replace(
        s,
        height=add(kappa, omega_mul(s.height)),
        cut_rank=kappa,
        hull_stage=a_hat,
        theory=level,
        note=f"lower to theory {level} at {kappa}",
        side_conditions=tuple(conditions),
    )
    return _log_step(state)


def weaken(
    s: BoundState,
    height: Optional[OrdTerm] = None,
    cut_rank: Optional[OrdTerm] = None,
    hull_stage: Optional[OrdTerm] = None,
) -> BoundState:
    """Raise annotations; none may decrease.

    Raises:
        BoundViolated: If a new value is below the old one
    """
    updates = {"height": height, "cut_rank": cut_rank, "hull_stage": hull_stage}
    changes = {}
    for name, value in updates.items():
        if value is None:
            continue
        old = getattr(s, name)
        if cmp(value, old) is LT:
            raise BoundViolated(name, str(value), str(old))
        changes[name] = value
    return _log_step(replace(s, note="weaken", side_conditions=(), **changes))


def side_condition_vee(rk: OrdTerm, sigma: OrdTerm, a: OrdTerm) -> bool:
    """rk < sigma implies rk < a."""
    return cmp(rk, sigma) is not LT or cmp(rk, a) is LT


def mahlo_gap_ok(a0: OrdTerm, a: OrdTerm) -> bool:
    """The caller-supplied a0 lies below a."""
    return cmp(a0, a) is LT


def _predicative_phase(s: BoundState, steps: int) -> BoundState:
    """Eliminate cuts from I+steps down to I, composed into one state."""
    state = s
    for j in range(steps, 0, -1):
        state = predicative_elim(state, ZERO, add(BIG_I, nat(j - 1)))
    return replace(state, note=f"predicative phase to {BIG_I} ({steps} steps)")


def _small_m_note(m: int, m_eff: int, n: int) -> str:
    return f"traced with m={m_eff} in place of m={m}, so n={n} rather than {m + 3}"


def theorem1_trace(m: int, p: int, big_n: int, k: int = 0) -> List[BoundState]:
    """Bound trace from the embedding down to cut rank K at theory level ``k``.

    Returns 4 + (N - k) states: embedding, predicative phase, collapse below
    K+ weakened to b_n, elimination to cut rank K, and one state per lowering.

    Raises:
        ValueError: On negative m, p or a level k outside 0..N
        CeilingExceeded: If the towers pass the configured ceiling
    """
    if not 0 <= k <= big_n:
        raise ValueError(f"k must lie in 0..{big_n}, got {k}")
    m_eff = max(m, 1)
    n = m_eff + 3
    record = abgam(n, big_n)
    states = [embedding_bound(m, p, n=n, big_n=big_n)]

    start = states[0]
    if m == 0:
        start = weaken(start, cut_rank=add(BIG_I, ONE))
    predicative = _predicative_phase(start, m_eff)
    states.append(_log_step(predicative))

    a_hat = collapse_argument(predicative, BIG_I)
    collapsed = collapse_step(predicative, BIG_I, K_PLUS, n)
    c = omega_tower(m_eff + 2, add(BIG_I, ONE))
    weakened = weaken(
        collapsed, height=record.b, cut_rank=record.b, hull_stage=record.gamma[big_n]
    )
    embedded_height = omega_tower(m_eff + 1, add(BIG_I, add(BIG_I, nat(p))))
    weakened = _with_conditions(
        replace(weakened, note=f"collapse below {K_PLUS} weakened to b_{n}"),
        *collapsed.side_conditions,
        SideCondition(f"{c} > {embedded_height}", cmp(c, embedded_height) is GT),
        SideCondition(f"a_hat <= {c}", _leq(a_hat, c)),
    )
    states.append(_log_step(weakened))

    eliminated = predicative_elim(weakened, record.b, BIG_K)
    states.append(replace(eliminated, note=f"predicative {record.b} -> {BIG_K}"))

    state = eliminated
    for _ in range(big_n - k):
        state = lower_mahlo(state, BIG_K)
        states.append(state)
    if m_eff != m:
        states[-1] = replace(states[-1], note=f"{states[-1].note}; {_small_m_note(m, m_eff, n)}")
    logger.info("theorem1_trace", m=m, p=p, big_n=big_n, k=k, states=len(states))
    return states


def theorem2_trace(m: int, p: int, big_n: int) -> List[BoundState]:
    """Extend the first trace to a final collapse below w1.

    The last lowering uses the collapse kappa = psiK(n0; alpha-bar_0; {}; gamma_0)
    and ends at theory level -1; a second embedding at level -2 is then
    eliminated down to cut rank I and collapsed below w1.

    Raises:
        ValueError: On negative m or p, or N < 1
        CeilingExceeded: If the towers pass the configured ceiling
    """
    if big_n < 1:
        raise ValueError(f"N must be positive, got {big_n}")
    states = theorem1_trace(m, p, big_n, k=1)
    n0 = states[-1].n
    first = abgam(n0, big_n)
    kappa = PsiK(n0, first.alpha_vec[0], ThetaSet(), first.gamma[0])
    lowered = lower_mahlo(states[-1], kappa)
    states.append(replace(lowered, theory=-1))

    m2 = max(m, 2)
    n = max(n0 + 1, m2 + 3)
    second = abgam(n, big_n)
    start = BoundState(
        height=add(BIG_I, add(BIG_I, OMEGA)),
        cut_rank=add(BIG_I, nat(m2)),
        hull_stage=ZERO,
        theory=-2,
        n=n,
        big_n=big_n,
        note="embedding at theory level -2",
    )
    states.append(_log_step(start))
    predicative = _predicative_phase(start, m2)
    states.append(_log_step(predicative))

    collapsed = collapse_step(predicative, OMEGA1, OMEGA1, n)
    b = omega_tower(m2 + 1, add(BIG_I, add(BIG_I, OMEGA)))
    top = PsiReg(OMEGA1, n, omega_tower(n - 1, add(BIG_I, ONE)))
    later = PsiK(n, second.alpha_vec[0], ThetaSet(), second.gamma[0])
    conditions = [
        SideCondition(f"height = psi(w1; {n}; {b})", collapsed.height == PsiReg(OMEGA1, n, b)),
        SideCondition(f"{top} > height", cmp(top, collapsed.height) is GT),
        SideCondition(f"{kappa} <= {later}", _cross_leq(kappa, later)),
    ]
    states.append(_log_step(_with_conditions(collapsed, *conditions)))
    if m2 != m:
        states[-1] = replace(states[-1], note=f"{states[-1].note}; second embedding uses m={m2}")
    logger.info("theorem2_trace", m=m, p=p, big_n=big_n, states=len(states))
    return states


def _cross_leq(low: OrdTerm, high: OrdTerm) -> bool:
    try:
        return _leq(low, high)
    except IncomparableSubscript:
        return False
