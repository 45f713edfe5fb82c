"""Arithmetic Service - Ordinal arithmetic on normal-form terms.

This service handles:
- Sums with left absorption
- Natural multiples, omega-multiples and products by additive principals
- omega-exponentiation, omega-towers and the binary Veblen function
- Rebuilding raw terms into normal form
"""

from ..domain.exceptions import CeilingExceeded
from ..domain.terms import (
    ONE,
    ZERO,
    One,
    OrdSeq,
    OrdTerm,
    PsiI,
    PsiK,
    PsiReg,
    RegSucc,
    Sum,
    Veblen,
    WExp,
    Zero,
    from_summands,
    is_atom,
    is_epsilon,
    nat,
    summands,
)
from ..domain.value_objects import Ordering
from ..infrastructure.config import get_settings
from .order_service import ceiling, cmp, theta_set

LT, EQ, GT = Ordering.LT, Ordering.EQ, Ordering.GT

OMEGA = WExp(ONE)

__all__ = [
    "OMEGA",
    "add",
    "mul_nat",
    "omega_mul",
    "principal_mul",
    "wexp",
    "omega_tower",
    "veblen",
    "normalize",
    "nat",
    "log_principal",
    "is_veblen_fixed_point",
]


def _checked(term: OrdTerm) -> OrdTerm:
    height = get_settings().max_tower
    if cmp(term, ceiling(height)) is not LT:
        raise CeilingExceeded(str(term), height)
    return term


def add(s: OrdTerm, t: OrdTerm) -> OrdTerm:
    """Normal form of s + t.

    Parts of ``s`` smaller than the leading part of ``t`` are absorbed.

    Raises:
        CeilingExceeded: If the sum reaches the tower ceiling
    """
    if isinstance(t, Zero):
        return s
    if isinstance(s, Zero):
        return t
    left, right = summands(s), summands(t)
    lead = right[0]
    keep = len(left)
    while keep and cmp(left[keep - 1], lead) is LT:
        keep -= 1
    return _checked(from_summands(left[:keep] + right))


def mul_nat(t: OrdTerm, m: int) -> OrdTerm:
    """t * m for a natural m, as iterated addition."""
    if m < 0:
        raise ValueError(f"Multiplier must be non-negative, got {m}")
    result: OrdTerm = ZERO
    for _ in range(m):
        result = add(result, t)
    return result


def log_principal(p: OrdTerm) -> OrdTerm:
    """The exponent e with p = omega^e, for additively principal p."""
    if isinstance(p, One):
        return ZERO
    if isinstance(p, WExp):
        return p.exponent
    if is_epsilon(p):
        return p
    raise ValueError(f"'{p}' is not additively principal")


def principal_mul(p: OrdTerm, t: OrdTerm) -> OrdTerm:
    """p * t for additively principal p.

    omega^e * (omega^f1 + ... + omega^fk) = omega^(e+f1) + ... + omega^(e+fk),
    with a unit part contributing p itself.
    """
    exponent = log_principal(p)
    result: OrdTerm = ZERO
    for part in summands(t):
        if isinstance(part, One):
            result = add(result, p)
        else:
            result = add(result, wexp(add(exponent, log_principal(part))))
    return result


def omega_mul(t: OrdTerm) -> OrdTerm:
    """omega * t."""
    return principal_mul(OMEGA, t)


def wexp(x: OrdTerm) -> OrdTerm:
    """omega^x in normal form; epsilon numbers are fixed."""
    if isinstance(x, Zero):
        return ONE
    if is_epsilon(x):
        return x
    return _checked(WExp(x))


def omega_tower(m: int, t: OrdTerm) -> OrdTerm:
    """omega_m(t): omega_0(t) = t, omega_{m+1}(t) = omega^(omega_m(t)).

    Raises:
        CeilingExceeded: If m exceeds the configured tower height or the
            result reaches the ceiling
    """
    if m < 0:
        raise ValueError(f"Tower height must be non-negative, got {m}")
    height = get_settings().max_tower
    if m > height:
        raise CeilingExceeded(f"tower({m}, {t})", height)
    result = t
    for _ in range(m):
        result = wexp(result)
    return result


def is_veblen_fixed_point(a: OrdTerm, b: OrdTerm) -> bool:
    """True when phi(a)(b) = b because b is already fixed by phi(a)."""
    if is_atom(b):
        return cmp(a, b) is LT
    if isinstance(b, Veblen):
        return cmp(a, b.index) is LT
    return False


def veblen(a: OrdTerm, b: OrdTerm) -> OrdTerm:
    """Normal form of phi(a)(b)."""
    if isinstance(a, Zero):
        return wexp(b)
    if is_veblen_fixed_point(a, b):
        return b
    if isinstance(b, Zero) and is_atom(a):
        # strongly critical: phi(A)(0) = A
        return a
    return _checked(Veblen(a, b))


def normalize(term: OrdTerm) -> OrdTerm:
    """Rebuild ``term`` bottom-up through the arithmetic operations.

    The identity on normal forms; collapse terms keep their shape with
    normalised parameters.
    """
    if isinstance(term, Sum):
        result: OrdTerm = ZERO
        for part in term.parts:
            result = add(result, normalize(part))
        return result
    if isinstance(term, WExp):
        return wexp(normalize(term.exponent))
    if isinstance(term, Veblen):
        return veblen(normalize(term.index), normalize(term.arg))
    if isinstance(term, RegSucc):
        return RegSucc(normalize(term.base))
    if isinstance(term, PsiReg):
        return PsiReg(normalize(term.kappa), term.n, normalize(term.arg))
    if isinstance(term, PsiI):
        return PsiI(term.n, normalize(term.arg))
    if isinstance(term, PsiK):
        return PsiK(
            term.n,
            OrdSeq(tuple(normalize(item) for item in term.seq)),
            theta_set(normalize(element) for element in term.theta),
            normalize(term.arg),
        )
    return term
