"""Unit tests for the bound service.

Tests cover:
- The embedding bound
- Predicative elimination in both of its cases
- Collapsing and Mahlo lowering with their preconditions
- Weakening and the small side-condition helpers
- Lengths and end states of the two traces
"""

import pytest

from ordkit.domain.entities import BoundState
from ordkit.domain.exceptions import (
    BoundViolated,
    InvalidRegular,
    ShapeMismatch,
    TheoryFloor,
    ValidationError,
)
from ordkit.domain.terms import (
    BIG_I,
    BIG_K,
    OMEGA1,
    ONE,
    ZERO,
    PsiReg,
    RegSucc,
    Sum,
    Veblen,
    WExp,
    nat,
)
from ordkit.services.arithmetic_service import add
from ordkit.services.bound_service import (
    collapse_argument,
    collapse_step,
    embedding_bound,
    lower_mahlo,
    mahlo_gap_ok,
    predicative_elim,
    side_condition_vee,
    theorem1_trace,
    theorem2_trace,
    weaken,
)
from ordkit.services.mahlo_service import abgam

OMEGA = WExp(ONE)
K_PLUS = RegSucc(BIG_K)


class TestEmbeddingBound:
    """Tests for embedding_bound."""

    def test_annotations(self):
        state = embedding_bound(1, 2, n=4, big_n=2)
        assert state.height == Sum((BIG_I, BIG_I, ONE, ONE))
        assert state.cut_rank == Sum((BIG_I, ONE))
        assert state.hull_stage == ZERO
        assert state.theory == 2
        assert state.n == 4

    def test_rejects_negative_arguments(self):
        with pytest.raises(ValueError):
            embedding_bound(-1, 0)

    def test_theory_range(self):
        with pytest.raises(ValidationError):
            BoundState(ZERO, ZERO, ZERO, theory=3, big_n=2)


class TestPredicativeElim:
    """Tests for predicative_elim."""

    @pytest.fixture
    def state(self):
        return embedding_bound(1, 0, big_n=2)

    def test_regular_case_moves_hull(self, state):
        result = predicative_elim(state, ZERO, BIG_I)
        assert result.cut_rank == BIG_I
        assert result.height == WExp(Sum((BIG_I, BIG_I)))
        assert result.hull_stage == Sum((BIG_I, BIG_I))
        assert result.side_conditions == ()

    def test_shape_mismatch(self, state):
        with pytest.raises(ShapeMismatch):
            predicative_elim(state, ONE, BIG_I)

    def test_veblen_case_keeps_hull(self):
        state = BoundState(ONE, Sum((BIG_K, OMEGA)), OMEGA, theory=1, big_n=2)
        result = predicative_elim(state, ONE, BIG_K)
        assert result.height == Veblen(ONE, ONE)
        assert result.cut_rank == BIG_K
        assert result.hull_stage == OMEGA
        assert result.conditions_hold
        assert any(c.asserted for c in result.side_conditions)


class TestCollapseStep:
    """Tests for collapse_step."""

    @pytest.fixture
    def state(self):
        return predicative_elim(embedding_bound(1, 0, big_n=2), ZERO, BIG_I)

    def test_collapse(self, state):
        a_hat = collapse_argument(state, BIG_I)
        result = collapse_step(state, BIG_I, K_PLUS, 1)
        assert result.height == PsiReg(K_PLUS, 1, a_hat)
        assert result.cut_rank == result.height
        assert result.hull_stage == add(a_hat, ONE)
        assert result.conditions_hold

    def test_sigma_must_be_principal(self, state):
        with pytest.raises(ShapeMismatch):
            collapse_step(state, nat(2), K_PLUS, 1)

    def test_lambda_must_be_designated(self, state):
        with pytest.raises(InvalidRegular):
            collapse_step(state, BIG_I, BIG_K, 1)

    def test_below_omega1_needs_lowest_theory(self, state):
        result = collapse_step(state, BIG_I, OMEGA1, 1)
        assert not result.conditions_hold


class TestLowerMahlo:
    """Tests for lower_mahlo."""

    @pytest.fixture
    def state(self):
        return BoundState(ONE, BIG_K, ZERO, theory=1, n=1, big_n=1)

    def test_lowering(self, state):
        result = lower_mahlo(state, BIG_K)
        assert result.height == Sum((BIG_K, OMEGA))
        assert result.cut_rank == BIG_K
        assert result.hull_stage == ONE
        assert result.theory == 0
        assert result.conditions_hold

    def test_lowering_to_a_collapse_records_the_class(self, state, small_mahlo):
        result = lower_mahlo(state, small_mahlo)
        assert result.cut_rank == small_mahlo
        assert any(c.asserted and "Mh_{0,1}" in c.label for c in result.side_conditions)

    def test_theory_floor(self):
        with pytest.raises(TheoryFloor):
            lower_mahlo(BoundState(ONE, BIG_K, ZERO, theory=0, big_n=1), BIG_K)

    def test_cut_rank_must_be_k(self):
        with pytest.raises(ShapeMismatch):
            lower_mahlo(BoundState(ONE, BIG_I, ZERO, theory=1, big_n=1), BIG_K)

    def test_height_bounded_by_a(self):
        with pytest.raises(BoundViolated):
            lower_mahlo(BoundState(BIG_I, BIG_K, ZERO, theory=1, big_n=1), BIG_K)


class TestWeaken:
    """Tests for weaken and the side-condition helpers."""

    @pytest.fixture
    def state(self):
        return BoundState(OMEGA, BIG_K, ONE, theory=0, big_n=2)

    def test_raises_annotations(self, state):
        result = weaken(state, height=BIG_K, hull_stage=OMEGA)
        assert (result.height, result.cut_rank, result.hull_stage) == (BIG_K, BIG_K, OMEGA)
        assert result.note == "weaken"

    def test_rejects_decrease(self, state):
        with pytest.raises(BoundViolated):
            weaken(state, cut_rank=OMEGA1)

    def test_side_condition_vee(self):
        assert side_condition_vee(ONE, ZERO, ZERO)
        assert side_condition_vee(ZERO, ONE, ONE)
        assert not side_condition_vee(ZERO, ONE, ZERO)

    def test_mahlo_gap(self):
        assert mahlo_gap_ok(ONE, OMEGA)
        assert not mahlo_gap_ok(OMEGA, OMEGA)


class TestTraces:
    """Tests for theorem1_trace and theorem2_trace."""

    @pytest.mark.parametrize("m,p,big_n", [(0, 0, 2), (1, 2, 1), (2, 1, 3)])
    def test_first_trace(self, m, p, big_n):
        states = theorem1_trace(m, p, big_n)
        final = states[-1]
        record = abgam(final.n, big_n)
        assert len(states) == 4 + big_n
        assert final.n == max(m, 1) + 3
        assert (final.theory, final.cut_rank) == (0, BIG_K)
        assert final.hull_stage == record.gamma[0]
        assert final.height == record.a
        assert all(state.conditions_hold for state in states)

    def test_first_trace_reports_small_m_adjustment(self):
        final = theorem1_trace(0, 0, 2)[-1]
        assert final.n == 4
        assert "in place of m=0" in final.note
        assert "n=4 rather than 3" in final.note
        assert "in place of" not in theorem1_trace(1, 0, 2)[-1].note

    def test_second_trace_reports_small_m_adjustment(self):
        assert "second embedding uses m=2" in theorem2_trace(0, 0, 1)[-1].note
        assert "second embedding" not in theorem2_trace(2, 0, 1)[-1].note

    def test_first_trace_to_intermediate_level(self):
        states = theorem1_trace(0, 0, 3, k=2)
        assert len(states) == 5
        assert states[-1].theory == 2

    def test_first_trace_level_range(self):
        with pytest.raises(ValueError):
            theorem1_trace(0, 0, 2, k=3)

    @pytest.mark.parametrize("m,big_n", [(0, 1), (2, 2)])
    def test_second_trace(self, m, big_n):
        states = theorem2_trace(m, 0, big_n)
        final = states[-1]
        assert len(states) == 7 + big_n
        assert isinstance(final.height, PsiReg)
        assert final.height.kappa == OMEGA1
        assert final.theory == -2
        assert all(state.conditions_hold for state in states)

    def test_second_trace_needs_positive_n(self):
        with pytest.raises(ValueError):
            theorem2_trace(0, 0, 0)
