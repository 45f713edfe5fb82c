"""Unit tests for the enumeration service.

Tests cover:
- The exact list of small normal forms below w1
- Ascending order and validity of enumerated terms
- Argument checks and the candidate cap
"""

import pytest

from ordkit.domain.exceptions import SizeLimitExceeded
from ordkit.domain.terms import (
    BIG_I,
    BIG_K,
    OMEGA1,
    ONE,
    ZERO,
    PsiI,
    PsiReg,
    WExp,
    nat,
    term_size,
)
from ordkit.domain.value_objects import Ordering
from ordkit.services.enumeration_service import TermEnumerator, enumerate_below
from ordkit.services.order_service import cmp
from ordkit.services.validation_service import is_normal_form


class TestEnumerateBelow:
    """Tests for enumerate_below."""

    def test_terms_below_omega1_of_size_three(self):
        expected = [
            ZERO,
            ONE,
            nat(2),
            WExp(ONE),
            PsiReg(OMEGA1, 1, ZERO),
            PsiReg(OMEGA1, 1, OMEGA1),
            PsiReg(OMEGA1, 1, BIG_K),
            PsiReg(OMEGA1, 1, BIG_I),
        ]
        assert enumerate_below(OMEGA1, 3) == expected

    def test_size_one(self):
        assert enumerate_below(BIG_I, 1) == [ZERO, OMEGA1, BIG_K]

    def test_count_below_i_of_size_five(self):
        assert len(enumerate_below(BIG_I, 5)) == 484

    def test_ascending_and_bounded(self):
        terms = enumerate_below(BIG_I, 4)
        for low, high in zip(terms, terms[1:]):
            assert cmp(low, high) is Ordering.LT
        assert all(term_size(t) <= 4 for t in terms)
        assert all(cmp(t, BIG_I) is Ordering.LT for t in terms)

    def test_every_term_is_a_normal_form(self):
        assert all(is_normal_form(t) for t in enumerate_below(BIG_I, 4))

    def test_extra_subscripts(self):
        terms = enumerate_below(BIG_I, 2, subscripts=(1, 2))
        assert PsiI(1, ZERO) in terms
        assert PsiI(2, ZERO) in terms

    @pytest.mark.parametrize("size", [0, 10])
    def test_size_out_of_range(self, size):
        with pytest.raises(ValueError):
            enumerate_below(BIG_I, size)


class TestTermEnumerator:
    """Tests for TermEnumerator."""

    def test_cap(self):
        enumerator = TermEnumerator(cap=10)
        with pytest.raises(SizeLimitExceeded):
            enumerator.enumerate_below(BIG_I, 4)

    def test_sizes_are_cached(self):
        enumerator = TermEnumerator()
        first = enumerator.terms_of_size(3)
        assert enumerator.terms_of_size(3) is first
        assert enumerator.terms_of_size(0) == []
