"""Unit tests for the validation service.

Tests cover:
- Each structural clause reported by validate
- Post-order reporting of the first violation
- The canonical-form predicate
"""

import pytest
from hypothesis import given

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
from ordkit.infrastructure.config import ConfigManager
from ordkit.services.validation_service import check_node, is_normal_form, validate
from tests.fixtures.strategies import terms

OMEGA = WExp(ONE)


def first_clause(term, big_n=None):
    report = validate(term, big_n)
    assert not report.ok
    return report.first.clause


class TestValidate:
    """Tests for validate."""

    def test_valid_term(self, b_1):
        report = validate(b_1)
        assert report.ok
        assert str(report) == "ok"

    @pytest.mark.parametrize(
        "term,clause",
        [
            (Sum((ONE,)), "sum_arity"),
            (Sum((ZERO, ONE)), "sum_parts"),
            (Sum((ONE, OMEGA)), "sum_order"),
            (WExp(ZERO), "wexp_zero"),
            (Veblen(ZERO, ONE), "veblen_zero"),
            (RegSucc(ONE), "regsucc_base"),
            (PsiReg(BIG_K, 1, ZERO), "psi_kappa"),
            (PsiI(0, ZERO), "subscript"),
        ],
    )
    def test_clause(self, term, clause):
        assert first_clause(term) == clause

    def test_psik_length(self):
        term = PsiK(1, OrdSeq((ZERO,)), ThetaSet(), ZERO)
        assert first_clause(term, big_n=2) == "psik_length"

    def test_psik_component_above_argument(self):
        term = PsiK(1, OrdSeq((ONE, ZERO)), ThetaSet(), ZERO)
        assert first_clause(term, big_n=2) == "psik_components"

    def test_psik_unsorted_parameters(self):
        term = PsiK(1, OrdSeq((ZERO, ZERO)), ThetaSet((BIG_K, ZERO)), ZERO)
        assert first_clause(term, big_n=2) == "theta_order"

    def test_psik_parameter_above_k(self):
        term = PsiK(1, OrdSeq((ZERO, ZERO)), ThetaSet((BIG_I,)), ZERO)
        assert first_clause(term, big_n=2) == "theta_bound"

    def test_collapse_argument_bound(self):
        """Test that subscript 1 admits arguments below w_2(I+1) only."""
        term = PsiI(1, WExp(WExp(Sum((BIG_I, ONE)))))
        assert first_clause(term) == "collapse_arg"

    def test_collapse_argument_below_value(self):
        """Test that a nonzero argument below the collapse itself is rejected."""
        term = PsiReg(OMEGA1, 1, ONE)
        assert first_clause(term) == "nf_hull"

    def test_ceiling(self):
        ConfigManager.override(max_tower=1)
        assert first_clause(WExp(WExp(Sum((BIG_I, ONE))))) == "ceiling"

    def test_reports_innermost_violation_first(self):
        term = Sum((OMEGA, PsiReg(BIG_K, 1, ZERO)))
        report = validate(term)
        assert report.first.clause == "psi_kappa"
        assert report.first.subterm == PsiReg(BIG_K, 1, ZERO)
        assert [v.clause for v in report.violations] == ["psi_kappa", "sum_order"]

    def test_check_node_ignores_children(self):
        assert check_node(Sum((BIG_I, WExp(ZERO)))) is None

    @given(terms())
    def test_enumerated_terms_validate(self, term):
        assert validate(term).ok


class TestNormalForm:
    """Tests for is_normal_form."""

    def test_valid_but_not_canonical(self):
        term = Veblen(ONE, BIG_K)
        assert validate(term).ok
        assert not is_normal_form(term)

    def test_stored_epsilon_power(self):
        assert not is_normal_form(WExp(BIG_K))

    def test_atom_at_zero(self):
        assert not is_normal_form(Veblen(OMEGA1, ZERO))

    def test_canonical(self):
        assert is_normal_form(Sum((OMEGA, ONE, ONE)))
        assert is_normal_form(Veblen(ONE, ZERO))
