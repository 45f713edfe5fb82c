"""Order Service - Total comparison of ordinal terms.

This service handles:
- Lexicographic comparison of additive decompositions
- phi-like principals (1, w^x, phi(a, b)) against each other and against atoms
- Atom positions: constants, successor chains and the collapses hanging below them
- Cross-subscript comparison of collapses via the monotonicity rule
- The tower ceiling and sorted parameter sets
"""

from functools import cmp_to_key, lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

from ..domain.exceptions import IncomparableSubscript, ValidationError
from ..domain.terms import (
    BIG_I,
    BIG_K,
    ONE,
    BigI,
    BigK,
    Omega1,
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
    is_atom,
    is_epsilon,
    phi_pair,
    summands,
)
from ..domain.value_objects import Ordering
from ..infrastructure.config import get_settings

LT, EQ, GT = Ordering.LT, Ordering.EQ, Ordering.GT

# Card ranks: omega_1 < K < successor chains (and collapses below I) < I
_CARD_RANK = {Omega1: 0, BigK: 1, RegSucc: 2, PsiI: 2, BigI: 3}


def cmp(s: OrdTerm, t: OrdTerm) -> Ordering:
    """Compare two terms.

    Args:
        s: Left term
        t: Right term

    Returns:
        LT, EQ or GT

    Raises:
        IncomparableSubscript: If two collapses differ in subscript and the
            lower one does not have componentwise smaller arguments
    """
    if s == t:
        return EQ
    return _cmp_cached(s, t)


@lru_cache(maxsize=1 << 18)
def _cmp_cached(s: OrdTerm, t: OrdTerm) -> Ordering:
    left, right = summands(s), summands(t)
    for p, q in zip(left, right):
        result = _cmp_principal(p, q)
        if result is not EQ:
            return result
    if len(left) < len(right):
        return LT
    if len(left) > len(right):
        return GT
    return EQ


def _cmp_principal(p: OrdTerm, q: OrdTerm) -> Ordering:
    if p == q:
        return EQ
    p, q = canonical_principal(p), canonical_principal(q)
    if p == q:
        return EQ
    p_pair, q_pair = phi_pair(p), phi_pair(q)
    if p_pair is not None and q_pair is not None:
        return _cmp_phi(p, p_pair, q, q_pair)
    if p_pair is not None:
        return _phi_against_atom(p_pair, q)
    if q_pair is not None:
        return _phi_against_atom(q_pair, p).flip()
    return _cmp_atoms(p, q)


@lru_cache(maxsize=1 << 16)
def canonical_principal(p: OrdTerm) -> OrdTerm:
    """The principal that ``p`` names once stored fixed points are collapsed.

    w^e is e for epsilon e, phi(a)(b) is b when b is fixed by phi(a), and
    phi(A)(0) is A for an atom A. Other principals come back unchanged.
    """
    if isinstance(p, WExp):
        exponent = canonical_principal(p.exponent)
        return exponent if is_epsilon(exponent) else p
    if isinstance(p, Veblen):
        index = canonical_principal(p.index)
        arg = canonical_principal(p.arg)
        if isinstance(index, Zero):
            return canonical_principal(WExp(arg)) if not isinstance(arg, Zero) else ONE
        if is_atom(arg) and cmp(index, arg) is LT:
            return arg
        if isinstance(arg, Veblen) and cmp(index, arg.index) is LT:
            return arg
        if isinstance(arg, Zero) and is_atom(index):
            return index
    return p


def _cmp_phi(
    p: OrdTerm,
    p_pair: Tuple[OrdTerm, OrdTerm],
    q: OrdTerm,
    q_pair: Tuple[OrdTerm, OrdTerm],
) -> Ordering:
    (a1, b1), (a2, b2) = p_pair, q_pair
    by_index = cmp(a1, a2)
    if by_index is EQ:
        return cmp(b1, b2)
    if by_index is LT:
        # q is a fixed point of phi(a1)
        return cmp(b1, q)
    # p is a fixed point of phi(a2)
    return cmp(p, b2)


def _phi_against_atom(pair: Tuple[OrdTerm, OrdTerm], atom: OrdTerm) -> Ordering:
    # atoms are strongly critical: closed under phi
    index, arg = pair
    if cmp(index, atom) is LT and cmp(arg, atom) is LT:
        return LT
    return GT


def _anchor(atom: OrdTerm) -> Tuple[OrdTerm, bool]:
    """The card an atom sits at, and whether it hangs just below that card."""
    if isinstance(atom, PsiReg):
        return atom.kappa, True
    if isinstance(atom, PsiK):
        return BIG_K, True
    return atom, False


def _card_rank(card: OrdTerm) -> int:
    rank = _CARD_RANK.get(type(card))
    if rank is None:
        raise ValidationError(f"'{card}' cannot index a collapse", field="card", value=str(card))
    return rank


def _chain(card: OrdTerm) -> Tuple[OrdTerm, int]:
    height = 0
    while isinstance(card, RegSucc):
        card = card.base
        height += 1
    return card, height


def _cmp_cards(c1: OrdTerm, c2: OrdTerm) -> Ordering:
    if c1 == c2:
        return EQ
    r1, r2 = _card_rank(c1), _card_rank(c2)
    if r1 != r2:
        return LT if r1 < r2 else GT
    if r1 != 2:
        return EQ
    root1, m1 = _chain(c1)
    root2, m2 = _chain(c2)
    by_root = _cmp_roots(root1, root2)
    if by_root is not EQ:
        return by_root
    if m1 == m2:
        return EQ
    return LT if m1 < m2 else GT


def _cmp_roots(r1: OrdTerm, r2: OrdTerm) -> Ordering:
    if r1 == r2:
        return EQ
    k1, k2 = _root_kind(r1), _root_kind(r2)
    if k1 != k2:
        return LT if k1 < k2 else GT
    if isinstance(r1, PsiI) and isinstance(r2, PsiI):
        return _cmp_collapses(r1, r2)
    return EQ


def _root_kind(root: OrdTerm) -> int:
    if isinstance(root, Omega1):
        return 0
    if isinstance(root, BigK):
        return 1
    if isinstance(root, PsiI):
        return 2
    raise ValidationError(
        f"'{root}' cannot start a successor chain", field="base", value=str(root)
    )


def _cmp_atoms(p: OrdTerm, q: OrdTerm) -> Ordering:
    card1, hanging1 = _anchor(p)
    card2, hanging2 = _anchor(q)
    by_card = _cmp_cards(card1, card2)
    if by_card is not EQ:
        return by_card
    if hanging1 != hanging2:
        return LT if hanging1 else GT
    if not hanging1:
        return EQ
    if type(p) is not type(q):
        # PsiReg below K only arises from invalid input; keep the order total
        return LT if isinstance(p, PsiReg) else GT
    return _cmp_collapses(p, q)


def _cmp_collapses(p: OrdTerm, q: OrdTerm) -> Ordering:
    """Compare two collapses of the same family below the same card."""
    if p.n == q.n:
        result = cmp(p.arg, q.arg)
        if result is not EQ or not isinstance(p, PsiK):
            return result
        result = _cmp_lex(tuple(p.seq), tuple(q.seq))
        if result is not EQ:
            return result
        return _cmp_lex(tuple(p.theta), tuple(q.theta))
    low, high = (p, q) if p.n < q.n else (q, p)
    if not _componentwise_leq(low, high):
        raise IncomparableSubscript(str(p), str(q))
    return LT if low is p else GT


def _componentwise_leq(low: OrdTerm, high: OrdTerm) -> bool:
    if cmp(low.arg, high.arg) is GT:
        return False
    if isinstance(low, PsiK):
        if len(low.seq) != len(high.seq) or len(low.theta) != len(high.theta):
            return False
        pairs = list(zip(low.seq, high.seq)) + list(zip(low.theta, high.theta))
        return all(cmp(a, b) is not GT for a, b in pairs)
    return True


def _cmp_lex(left: Sequence[OrdTerm], right: Sequence[OrdTerm]) -> Ordering:
    for a, b in zip(left, right):
        result = cmp(a, b)
        if result is not EQ:
            return result
    if len(left) == len(right):
        return EQ
    return LT if len(left) < len(right) else GT


def lt(s: OrdTerm, t: OrdTerm) -> bool:
    return cmp(s, t) is LT


def leq(s: OrdTerm, t: OrdTerm) -> bool:
    return cmp(s, t) is not GT


def max_term(terms: Iterable[OrdTerm], default: Optional[OrdTerm] = None) -> OrdTerm:
    """Largest term under the order."""
    best = default
    for term in terms:
        if best is None or cmp(best, term) is LT:
            best = term
    if best is None:
        raise ValueError("max_term() of an empty collection without default")
    return best


def sort_terms(terms: Iterable[OrdTerm]) -> List[OrdTerm]:
    return sorted(terms, key=cmp_to_key(lambda a, b: _as_int(cmp(a, b))))


def _as_int(result: Ordering) -> int:
    return -1 if result is LT else (1 if result is GT else 0)


def raw_tower(m: int, base: OrdTerm) -> OrdTerm:
    """omega_m(base) built without normalisation; for bases that are sums."""
    term = base
    for _ in range(m):
        term = WExp(term)
    return term


def ceiling(max_tower: Optional[int] = None) -> OrdTerm:
    """omega_{max_tower}(I+1), the exclusive upper bound of every term."""
    height = get_settings().max_tower if max_tower is None else max_tower
    return _ceiling(height)


@lru_cache(maxsize=16)
def _ceiling(height: int) -> OrdTerm:
    return raw_tower(height, Sum((BIG_I, ONE)))


def below_ceiling(term: OrdTerm, max_tower: Optional[int] = None) -> bool:
    height = get_settings().max_tower if max_tower is None else max_tower
    return cmp(term, ceiling(height)) is LT


def collapse_arg_bound(n: int) -> OrdTerm:
    """omega_{n+1}(I+1): collapse arguments at subscript n stay below it."""
    return raw_tower(n + 1, Sum((BIG_I, ONE)))


def theta_set(items: Iterable[OrdTerm]) -> ThetaSet:
    """Build a sorted, duplicate-free parameter set of terms at most K.

    Raises:
        ValidationError: If an element exceeds K
    """
    ordered: List[OrdTerm] = []
    for item in sort_terms(items):
        if cmp(item, BIG_K) is GT:
            raise ValidationError(
                f"Parameter '{item}' exceeds K", field="theta", value=str(item)
            )
        if not ordered or ordered[-1] != item:
            ordered.append(item)
    return ThetaSet(tuple(ordered))
