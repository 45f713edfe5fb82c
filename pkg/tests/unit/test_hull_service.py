"""Unit tests for the hull service.

Tests cover:
- The clause admitting each kind of term into a hull
- Stage, subscript and parameter restrictions
- The collapse normal-form condition
- Validated collapse constructors and resolvent descriptors
"""

import pytest

from ordkit.domain.entities import HullClause, HullQuery
from ordkit.domain.exceptions import (
    LengthMismatch,
    NotACollapse,
    NotComponentwiseLess,
    ValidationError,
)
from ordkit.domain.terms import (
    BIG_I,
    BIG_K,
    OMEGA1,
    ONE,
    ZERO,
    OrdSeq,
    PsiI,
    PsiK,
    PsiReg,
    RegSucc,
    Sum,
    ThetaSet,
    Veblen,
    WExp,
)
from ordkit.services.hull_service import (
    hull_clause,
    in_hull,
    nf_valid,
    psi_i,
    psi_k,
    psi_reg,
    resolvent_descriptor,
)

OMEGA = WExp(ONE)


class TestHullClause:
    """Tests for hull_clause and in_hull."""

    @pytest.fixture
    def query(self):
        return HullQuery(alpha=BIG_I, n=1)

    @pytest.mark.parametrize("term", [ZERO, OMEGA1, BIG_K, BIG_I])
    def test_constants(self, query, term):
        assert hull_clause(term, query) == HullClause("constant")

    def test_sum(self, query):
        clause = hull_clause(Sum((BIG_I, ONE)), query)
        assert clause == HullClause("sum", (BIG_I, ONE))

    def test_exponential(self, query):
        assert hull_clause(ONE, query) == HullClause("exponential", (ZERO,))
        assert hull_clause(OMEGA, query) == HullClause("exponential", (ONE,))

    def test_exponent_above_subscript_bound(self, query):
        """Test that w^x needs x below w_n(I+1)."""
        assert not in_hull(WExp(WExp(Sum((BIG_I, ONE)))), query)

    def test_veblen(self, query):
        assert hull_clause(Veblen(ONE, BIG_K), query) == HullClause("veblen", (ONE, BIG_K))

    def test_successor(self, query):
        assert hull_clause(RegSucc(BIG_K), query) == HullClause("successor", (BIG_K,))

    def test_collapse_below_stage(self, query):
        clause = hull_clause(PsiI(1, BIG_K), query)
        assert clause == HullClause("psi_i", (BIG_K,))

    def test_collapse_at_or_above_stage(self):
        assert not in_hull(PsiI(1, BIG_K), HullQuery(alpha=BIG_K))

    def test_collapse_with_other_subscript(self, query):
        assert not in_hull(PsiI(2, ZERO), query)

    def test_psi_reg_and_psi_k(self, query):
        reg = PsiReg(OMEGA1, 1, ONE)
        assert hull_clause(reg, query) == HullClause("psi_reg", (OMEGA1, ONE))
        k = PsiK(1, OrdSeq((ZERO, ZERO)), ThetaSet(), ZERO)
        assert hull_clause(k, query) == HullClause("psi_k", (ZERO, ZERO, ZERO))

    def test_threshold(self):
        query = HullQuery(alpha=ZERO, threshold=PsiI(1, ZERO))
        assert hull_clause(OMEGA, query) == HullClause("threshold")

    def test_parameters(self):
        collapse = PsiReg(OMEGA1, 1, BIG_K)
        query = HullQuery(alpha=ZERO, theta=ThetaSet((collapse,)))
        assert hull_clause(collapse, query) == HullClause("parameter")
        assert in_hull(RegSucc(collapse), query)

    def test_kappa_context(self):
        collapse = PsiI(1, BIG_K)
        assert in_hull(collapse, HullQuery(alpha=ZERO, kappa_ctx=collapse))
        assert not in_hull(collapse, HullQuery(alpha=ZERO))

    def test_positive_subscript_required(self):
        with pytest.raises(ValidationError):
            HullQuery(alpha=ZERO, n=0)


class TestNfValid:
    """Tests for nf_valid."""

    def test_zero_argument(self):
        assert nf_valid(PsiReg(OMEGA1, 1, ZERO))

    def test_argument_below_value(self):
        assert not nf_valid(PsiReg(OMEGA1, 1, ONE))

    def test_argument_in_hull(self, b_1):
        assert nf_valid(b_1)

    def test_argument_outside_hull(self):
        """Test that an argument built from a larger collapse fails."""
        inner = PsiI(1, BIG_I)
        assert not nf_valid(PsiI(1, Sum((inner, ONE))))

    def test_psik_sequence_length(self):
        term = PsiK(1, OrdSeq((ZERO,)), ThetaSet(), ZERO)
        assert not nf_valid(term, big_n=2)
        assert nf_valid(term, big_n=1)

    def test_not_a_collapse(self):
        with pytest.raises(NotACollapse):
            nf_valid(BIG_K)


class TestConstructors:
    """Tests for psi_reg, psi_i and psi_k."""

    def test_psi_reg(self, b_1, k_plus):
        assert psi_reg(k_plus, 1, Sum((BIG_I, ONE))) == b_1

    def test_psi_reg_rejects_undesignated_kappa(self):
        with pytest.raises(ValidationError) as exc_info:
            psi_reg(BIG_K, 1, ZERO)
        assert exc_info.value.field == "psi_kappa"

    def test_psi_i(self):
        assert psi_i(1, BIG_I) == PsiI(1, BIG_I)

    def test_psi_k_sorts_parameters(self):
        term = psi_k(1, [ZERO, ZERO], [BIG_K, OMEGA1], BIG_K)
        assert term == PsiK(1, OrdSeq((ZERO, ZERO)), ThetaSet((OMEGA1, BIG_K)), BIG_K)


class TestResolventDescriptor:
    """Tests for resolvent_descriptor."""

    def test_classes(self):
        seq = OrdSeq((ONE, OMEGA))
        nu = OrdSeq((ZERO, ONE))
        descriptor = resolvent_descriptor(0, seq, nu, BIG_I, ThetaSet())
        assert [c.k for c in descriptor.classes] == [0, 1]
        assert descriptor.classes[0].seq == OrdSeq((ZERO, OMEGA))
        assert descriptor.classes[1].seq == OrdSeq((ONE,))
        assert descriptor.hull_stage == BIG_I

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            resolvent_descriptor(0, OrdSeq((ONE,)), OrdSeq(), ZERO, ThetaSet())

    def test_not_componentwise_less(self):
        with pytest.raises(NotComponentwiseLess):
            resolvent_descriptor(0, OrdSeq((ONE,)), OrdSeq((ONE,)), ZERO, ThetaSet())
