"""Mahlo Service - Sequence combinatorics and Mh-class bookkeeping.

This service handles:
- Length, components, end segments and component sets of sequences
- The bullet substitution (nu . alpha)[i]
- Componentwise comparisons
- The constants b_n, a_n, gamma_{k,n}, alpha-bar_{k,n}
- Mh descriptors and the hypothesis of their subsumption
"""

from typing import FrozenSet, Optional

from ..domain.entities import AbgamRecord, MhDescriptor
from ..domain.exceptions import IndexOutOfRange, LengthMismatch
from ..domain.terms import (
    BIG_I,
    BIG_K,
    ONE,
    OrdSeq,
    OrdTerm,
    RegSucc,
    ThetaSet,
)
from ..domain.value_objects import Ordering
from ..infrastructure.logging import get_logger
from .arithmetic_service import add, mul_nat, omega_tower, veblen
from .order_service import cmp

logger = get_logger(__name__)

LT, EQ, GT = Ordering.LT, Ordering.EQ, Ordering.GT


def lh(seq: OrdSeq) -> int:
    return len(seq)


def component(seq: OrdSeq, i: int) -> OrdTerm:
    """seq(i).

    Raises:
        IndexOutOfRange: Unless 0 <= i < lh(seq)
    """
    if not 0 <= i < len(seq):
        raise IndexOutOfRange(i, len(seq))
    return seq[i]


def end_segment(seq: OrdSeq, i: int) -> OrdSeq:
    """seq[i] = (seq(i), ..., seq(lh-1)); empty at i = lh.

    Raises:
        IndexOutOfRange: Unless 0 <= i <= lh(seq)
    """
    if not 0 <= i <= len(seq):
        raise IndexOutOfRange(i, len(seq))
    return OrdSeq(seq.items[i:])


def kset_seq(seq: OrdSeq) -> FrozenSet[OrdTerm]:
    """The set of components."""
    return frozenset(seq.items)


def check_lengths(left: OrdSeq, right: OrdSeq) -> None:
    if len(left) != len(right):
        raise LengthMismatch(len(left), len(right))


def bullet_sub(nu: OrdSeq, alpha: OrdSeq, i: int) -> OrdSeq:
    """(nu . alpha)[i] = (nu(i), alpha(i+1), ..., alpha(lh-1)).

    Raises:
        LengthMismatch: If lh(nu) != lh(alpha)
        IndexOutOfRange: Unless 0 <= i < lh(alpha)
    """
    check_lengths(nu, alpha)
    if not 0 <= i < len(alpha):
        raise IndexOutOfRange(i, len(alpha))
    return OrdSeq((nu[i],) + alpha.items[i + 1:])


def seq_less(nu: OrdSeq, alpha: OrdSeq) -> bool:
    """Strictly smaller in every component."""
    check_lengths(nu, alpha)
    return all(cmp(a, b) is LT for a, b in zip(nu, alpha))


def seq_leq_ord(alpha: OrdSeq, beta: OrdTerm) -> bool:
    """Every component is at most ``beta``."""
    return all(cmp(a, beta) is not GT for a in alpha)


def lift(term: OrdTerm) -> OrdSeq:
    """The singleton sequence standing for an ordinal."""
    return OrdSeq((term,))


def unlift(seq: OrdSeq) -> OrdTerm:
    if len(seq) != 1:
        raise LengthMismatch(len(seq), 1)
    return seq[0]


def abgam(n: int, big_n: int) -> AbgamRecord:
    """Compute b_n, a_n and gamma_{k,n}, alpha-bar_{k,n} for 0 <= k <= N.

    b_n = psi(K+; n; w_{n-1}(I+1)), a_n = phi(b_n, b_n),
    gamma_{k,n} = w_{n-1}(I+1) + 1 + a_n * (N - k),
    alpha-bar_{k,n}(i) = gamma_{k+i,n} for i < N - k.

    Raises:
        ValueError: If n or N is not positive
        CeilingExceeded: If a tower reaches the ceiling
    """
    if n < 1 or big_n < 1:
        raise ValueError(f"n and N must be positive, got n={n}, N={big_n}")
    base = omega_tower(n - 1, add(BIG_I, ONE))
    from .hull_service import psi_reg

    b = psi_reg(RegSucc(BIG_K), n, base)
    a = veblen(b, b)
    start = add(base, ONE)
    gamma = {k: add(start, mul_nat(a, big_n - k)) for k in range(big_n + 1)}
    alpha_vec = {
        k: OrdSeq(tuple(gamma[k + i] for i in range(big_n - k))) for k in range(big_n + 1)
    }
    logger.debug("abgam", n=n, big_n=big_n, b=str(b))
    return AbgamRecord(n=n, big_n=big_n, b=b, a=a, gamma=gamma, alpha_vec=alpha_vec)


def mh_descriptor(
    k: int,
    n: int,
    seq: OrdSeq,
    theta: Optional[ThetaSet] = None,
    big_n: int = 2,
) -> MhDescriptor:
    """Validated Mh_{k,n}(seq)[theta] descriptor (lh(seq) must be N - k)."""
    return MhDescriptor(k=k, n=n, seq=seq, theta=theta or ThetaSet(), big_n=big_n)


def mh_subsumes(d1: MhDescriptor, d2: MhDescriptor) -> bool:
    """Whether d2.seq is componentwise at most d1.seq with all other data equal.

    That is the hypothesis under which Mh(d1) is contained in Mh(d2); the
    inclusion itself is never computed.
    """
    if (d1.k, d1.n, d1.theta, d1.big_n) != (d2.k, d2.n, d2.theta, d2.big_n):
        return False
    if len(d1.seq) != len(d2.seq):
        return False
    return all(cmp(low, high) is not GT for low, high in zip(d2.seq, d1.seq))
