"""Enumeration Service - Exhaustive generation of normal-form terms by size.

Terms are built bottom-up: every candidate of size s is assembled from
already-accepted terms of smaller sizes, so only the root node needs
checking. The result of ``enumerate_below`` is the brute-force oracle the
property suites run against.
"""

from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ..domain.exceptions import IncomparableSubscript, SizeLimitExceeded
from ..domain.terms import (
    BIG_I,
    BIG_K,
    OMEGA1,
    ONE,
    ZERO,
    BigK,
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
    is_epsilon,
    is_principal,
    regular_designated,
    summands,
    term_size,
)
from ..domain.value_objects import Ordering
from ..infrastructure.config import get_settings
from ..infrastructure.logging import get_logger
from .order_service import ceiling, cmp, sort_terms
from .validation_service import canonical_node, check_node

logger = get_logger(__name__)

LT, EQ, GT = Ordering.LT, Ordering.EQ, Ordering.GT

MAX_ENUM_SIZE = 9


class TermEnumerator:
    """Builds and caches all normal-form terms of each size.

    Attributes:
        subscripts: Collapse subscripts to use
        big_n: Length of PsiK sequences
        cap: Largest candidate pool tolerated before giving up
    """

    def __init__(
        self,
        subscripts: Sequence[int] = (1,),
        big_n: Optional[int] = None,
        cap: Optional[int] = None,
        max_tower: Optional[int] = None,
    ):
        settings = get_settings()
        self.subscripts = tuple(sorted(set(subscripts)))
        self.big_n = settings.big_n if big_n is None else big_n
        self.cap = settings.enum_cap if cap is None else cap
        self.max_tower = settings.max_tower if max_tower is None else max_tower
        self._by_size: Dict[int, List[OrdTerm]] = {}
        self._candidates = 0

    def terms_of_size(self, size: int) -> List[OrdTerm]:
        """All normal-form terms of exactly ``size`` nodes (unsorted)."""
        if size < 1:
            return []
        if size not in self._by_size:
            for smaller in range(1, size):
                self.terms_of_size(smaller)
            self._by_size[size] = self._build(size)
            logger.debug("enumerated_size", size=size, terms=len(self._by_size[size]))
        return self._by_size[size]

    def enumerate_below(self, bound: OrdTerm, max_size: int) -> List[OrdTerm]:
        """All normal-form terms of size at most ``max_size`` below ``bound``, ascending.

        Raises:
            ValueError: If max_size is outside 1..9
            SizeLimitExceeded: If the candidate pool passes the cap
        """
        if not 1 <= max_size <= MAX_ENUM_SIZE:
            raise ValueError(f"max_size must be within 1..{MAX_ENUM_SIZE}, got {max_size}")
        selected = []
        for size in range(1, max_size + 1):
            for term in self.terms_of_size(size):
                try:
                    if cmp(term, bound) is LT:
                        selected.append(term)
                except IncomparableSubscript:
                    continue
        return sort_terms(selected)

    # -- construction -------------------------------------------------

    def _accept(self, out: List[OrdTerm], candidate: OrdTerm) -> None:
        self._candidates += 1
        if self._candidates > self.cap:
            logger.warning("enumeration_cap_hit", cap=self.cap)
            raise SizeLimitExceeded(self._candidates, self.cap)
        if not canonical_node(candidate):
            return
        if check_node(candidate, self.big_n) is not None:
            return
        try:
            if cmp(candidate, ceiling(self.max_tower)) is not LT:
                return
        except IncomparableSubscript:
            return
        out.append(candidate)

    def _build(self, size: int) -> List[OrdTerm]:
        out: List[OrdTerm] = []
        if size == 1:
            return [ZERO, OMEGA1, BIG_K, BIG_I]
        if size == 2:
            self._accept(out, ONE)
        previous = self._by_size[size - 1]
        for x in previous:
            if not isinstance(x, Zero) and not is_epsilon(x):
                self._accept(out, WExp(x))
            if isinstance(x, (BigK, PsiI)) or (isinstance(x, RegSucc) and regular_designated(x)):
                self._accept(out, RegSucc(x))
            for n in self.subscripts:
                self._accept(out, PsiI(n, x))
        for left in range(1, size - 1):
            right = size - 1 - left
            for a in self._by_size[left]:
                if isinstance(a, Zero):
                    continue
                for b in self._by_size[right]:
                    self._accept(out, Veblen(a, b))
            for kappa in self._by_size[left]:
                if not regular_designated(kappa):
                    continue
                for gamma in self._by_size[right]:
                    for n in self.subscripts:
                        self._accept(out, PsiReg(kappa, n, gamma))
        for candidate in self._psi_k(size):
            self._accept(out, candidate)
        for candidate in self._sums(size):
            self._accept(out, candidate)
        return out

    def _sums(self, size: int) -> Iterator[OrdTerm]:
        for part_size in range(1, size):
            for part in self._by_size[part_size]:
                if not is_principal(part):
                    continue
                cost = 1 if isinstance(part, One) else part_size + 1
                head_size = size - cost
                if head_size < 1:
                    continue
                for head in self._by_size[head_size]:
                    if isinstance(head, Zero):
                        continue
                    try:
                        if cmp(summands(head)[-1], part) is LT:
                            continue
                    except IncomparableSubscript:
                        continue
                    yield Sum(summands(head) + (part,))

    def _psi_k(self, size: int) -> Iterator[OrdTerm]:
        budget = size - 1
        for arg_size in range(1, budget - self.big_n + 1):
            for seq_size in range(self.big_n, budget - arg_size + 1):
                theta_size = budget - arg_size - seq_size
                thetas = list(self._theta_sets(theta_size))
                if not thetas:
                    continue
                for seq in self._sequences(self.big_n, seq_size):
                    for arg in self._by_size[arg_size]:
                        for theta in thetas:
                            for n in self.subscripts:
                                yield PsiK(n, OrdSeq(seq), theta, arg)

    def _sequences(self, length: int, total: int) -> Iterator[Tuple[OrdTerm, ...]]:
        if length == 0:
            if total == 0:
                yield ()
            return
        for first_size in range(1, total - (length - 1) + 1):
            for first in self._by_size.get(first_size, []):
                for rest in self._sequences(length - 1, total - first_size):
                    yield (first,) + rest

    def _theta_sets(self, total: int) -> Iterator[ThetaSet]:
        if total == 0:
            yield ThetaSet()
            return
        small = [
            t
            for s in range(1, total + 1)
            for t in self._by_size.get(s, [])
            if _at_most_k(t)
        ]
        ordered = sort_terms(small)
        for count in range(1, total + 1):
            for chosen in combinations(ordered, count):
                if sum(term_size(t) for t in chosen) == total:
                    yield ThetaSet(tuple(chosen))


def _at_most_k(term: OrdTerm) -> bool:
    try:
        return cmp(term, BIG_K) is not GT
    except IncomparableSubscript:
        return False


@lru_cache(maxsize=8)
def _shared_enumerator(
    subscripts: Tuple[int, ...], big_n: int, cap: int, max_tower: int
) -> TermEnumerator:
    return TermEnumerator(subscripts, big_n, cap, max_tower)


def enumerate_below(
    bound: OrdTerm,
    max_size: int,
    subscripts: Sequence[int] = (1,),
    big_n: Optional[int] = None,
) -> List[OrdTerm]:
    """All normal-form terms of size at most ``max_size`` below ``bound``, ascending.

    Enumerators are shared per configuration so repeated calls reuse work.

    Raises:
        ValueError: If max_size is outside 1..9
        SizeLimitExceeded: If the candidate pool passes ORDKIT_ENUM_CAP
    """
    settings = get_settings()
    enumerator = _shared_enumerator(
        tuple(sorted(set(subscripts))),
        settings.big_n if big_n is None else big_n,
        settings.enum_cap,
        settings.max_tower,
    )
    return enumerator.enumerate_below(bound, max_size)
