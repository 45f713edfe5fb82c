"""Unit tests for the formula service.

Tests cover:
- Coefficient sets and substitution
- Ranks, including the exempted predicate shapes
- Sigma / Pi levels and the classes of classify
- Relativization
- Literal truth, shapes and components
- Sentence validation and negation
"""

import pytest
from hypothesis import given

from ordkit.domain.entities import AssignShape, IndexDescriptor
from ordkit.domain.exceptions import NotRelativizable, UndecidableLiteral, ValidationError
from ordkit.domain.formulas import (
    LI,
    All2,
    AllB,
    And,
    Ex2,
    ExB,
    LitIn,
    LitP,
    LitPI,
    LitR,
    LitReg,
    LitX,
    Or,
    Var,
    negate,
)
from ordkit.domain.terms import BIG_I, BIG_K, OMEGA1, ONE, ZERO, PsiReg, RegSucc, Sum, WExp, nat
from ordkit.domain.value_objects import Connective, IndexKind, Ordering
from ordkit.services.arithmetic_service import add
from ordkit.services.formula_service import (
    assign_shape,
    classify,
    components,
    is_delta0,
    is_exempt_shape,
    is_sigma_sigma,
    k_all,
    k_e,
    k_r,
    literal_truth,
    pi1_levels,
    rank,
    relativization_side_conditions,
    relativize,
    rk_l,
    sigma_levels,
    substitute,
    validate_formula,
)
from ordkit.services.order_service import cmp
from tests.fixtures.strategies import formulas

OMEGA = WExp(ONE)
K_PLUS = RegSucc(BIG_K)
X, Y = Var("x"), Var("y")


@pytest.fixture
def pi_shape():
    return ExB("x", LI, And(LitIn(ONE, X), LitPI(X, 1)))


@pytest.fixture
def p_shape():
    return ExB("x", K_PLUS, ExB("y", K_PLUS, And(LitIn(ZERO, X), LitP(K_PLUS, X, Y))))


class TestCoefficients:
    """Tests for k_e, k_r, k_all and rk_l."""

    def test_literal(self):
        literal = LitIn(ONE, X)
        assert k_e(literal) == {ONE, ZERO}
        assert k_r(literal) == {ZERO}

    def test_restriction_bounds(self):
        literal = LitR("B", BIG_K, ONE)
        assert k_e(literal) == {ONE, ZERO}
        assert k_r(literal) == {BIG_K, ZERO}
        assert k_all(literal) == {ONE, BIG_K, ZERO}

    def test_quantifier_bounds(self):
        assert k_e(ExB("x", OMEGA, LitIn(X, OMEGA1))) == {OMEGA, OMEGA1, ZERO}
        assert k_e(Ex2(BIG_K, LitX(0, ZERO))) == {BIG_K, ZERO}

    def test_rk_l(self):
        assert rk_l(X) == ZERO
        assert rk_l(LI) == BIG_I
        assert rk_l(OMEGA) == OMEGA


class TestSubstitute:
    """Tests for substitute."""

    def test_replaces_free_occurrences(self):
        formula = And(LitIn(X, Y), LitReg(X))
        assert substitute(formula, "x", ONE) == And(LitIn(ONE, Y), LitReg(ONE))

    def test_respects_shadowing(self):
        formula = ExB("x", OMEGA, LitIn(X, OMEGA))
        assert substitute(formula, "x", ONE) == formula

    def test_variable_bound(self):
        formula = ExB("y", X, LitIn(Y, X))
        assert substitute(formula, "x", OMEGA) == ExB("y", OMEGA, LitIn(Y, OMEGA))


class TestRank:
    """Tests for rank."""

    def test_literal(self):
        assert rank(LitIn(ZERO, OMEGA)) == OMEGA
        assert rank(LitReg(ZERO)) == ZERO

    def test_connectives_add_one(self):
        formula = Or(LitIn(ZERO, ONE), LitIn(ZERO, ZERO))
        assert rank(formula) == nat(2)

    def test_bounded_quantifier(self):
        formula = ExB("x", BIG_K, LitIn(X, BIG_K))
        assert rank(formula) == Sum((BIG_K, ONE))

    def test_bounded_quantifier_ranks_at_least_omega_times_bound(self):
        formula = AllB("x", ONE, LitIn(X, ZERO))
        assert rank(formula) == OMEGA

    def test_predicate_quantifier(self):
        assert rank(Ex2(BIG_K, LitX(0, ZERO))) == Sum((BIG_K, ONE))

    def test_pi_shape_ranks_i(self, pi_shape):
        assert rank(pi_shape) == BIG_I
        assert rank(negate(pi_shape)) == BIG_I

    def test_p_shape(self, p_shape):
        assert is_exempt_shape(p_shape)
        assert rank(p_shape) == Sum((K_PLUS, ONE))

    @given(formulas())
    def test_rank_stays_below_i_plus_omega(self, formula):
        assert cmp(rank(formula), add(BIG_I, OMEGA)) is Ordering.LT

    @given(formulas())
    def test_rank_bounds_coefficients(self, formula):
        r = rank(formula)
        assert all(cmp(rk_l(t), r) is not Ordering.GT for t in k_all(formula))


class TestLevels:
    """Tests for sigma_levels and pi1_levels."""

    def test_unbounded_existential(self):
        assert sigma_levels(ExB("x", LI, LitIn(ZERO, X))) == (1, 2)

    def test_unbounded_universal(self):
        assert sigma_levels(AllB("x", LI, LitIn(ZERO, X))) == (2, 1)

    def test_bounded_quantifiers_keep_level(self):
        assert sigma_levels(ExB("x", OMEGA, LitIn(X, OMEGA))) == (0, 0)

    def test_alternation(self):
        formula = AllB("x", LI, ExB("y", LI, LitIn(X, Y)))
        assert sigma_levels(formula) == (3, 2)

    def test_impure(self):
        assert sigma_levels(LitReg(ZERO)) is None

    def test_predicate_quantifier_at_lambda(self):
        assert pi1_levels(Ex2(BIG_K, LitX(0, ZERO)), BIG_K) == (1, 2)
        assert pi1_levels(All2(BIG_K, LitX(0, ZERO)), BIG_K) == (2, 1)

    def test_unbounded_quantifier_has_no_level(self):
        assert pi1_levels(ExB("x", LI, LitIn(ZERO, X)), BIG_K) is None


class TestClassify:
    """Tests for classify and its parts."""

    def test_bounded_formula(self):
        result = classify(ExB("x", OMEGA, LitIn(X, OMEGA)), BIG_K, 1)
        assert result.is_delta0_lambda
        assert result.is_sigma_sigma
        assert result.pi1_level == 0
        assert result.in_pi20

    def test_predicate_quantifier(self):
        result = classify(Ex2(BIG_K, LitX(0, ZERO)), BIG_K, 1)
        assert not result.is_delta0_lambda
        assert not result.is_sigma_sigma
        assert result.pi1_level == 2

    def test_unbounded_formula(self):
        result = classify(ExB("x", LI, LitIn(ZERO, X)), BIG_K, 1)
        assert not result.is_delta0_lambda
        assert result.is_sigma_sigma
        assert result.pi1_level is None

    def test_delta0_restriction_bound_may_equal_lambda(self):
        assert is_delta0(LitR("B", BIG_K, ZERO), BIG_K)
        assert not is_delta0(LitIn(ZERO, BIG_K), BIG_K)

    def test_sigma_sigma_predicate_below_lambda(self):
        formula = Ex2(BIG_K, LitX(0, ZERO))
        assert is_sigma_sigma(formula, K_PLUS, 1)
        assert not is_sigma_sigma(formula, BIG_K, 1)

    def test_positive_level_required(self):
        with pytest.raises(ValueError):
            classify(LitIn(ZERO, ONE), BIG_K, 0)


class TestRelativize:
    """Tests for relativize."""

    def test_replaces_lambda_bounds(self, small_mahlo):
        formula = ExB("x", BIG_K, And(LitR("B", BIG_K, X), LitIn(ZERO, BIG_K)))
        expected = ExB("x", small_mahlo, And(LitR("B", small_mahlo, X), LitIn(ZERO, BIG_K)))
        assert relativize(formula, small_mahlo, BIG_K) == expected

    def test_predicate_quantifier(self):
        formula = Ex2(K_PLUS, LitX(0, ZERO), 0)
        assert relativize(formula, BIG_K, K_PLUS) == Ex2(BIG_K, LitX(0, ZERO), 0)

    def test_requires_kappa_between_omega1_and_lambda(self):
        with pytest.raises(NotRelativizable):
            relativize(LitIn(ZERO, ONE), OMEGA1, BIG_K)
        with pytest.raises(NotRelativizable):
            relativize(LitIn(ZERO, ONE), K_PLUS, BIG_K)

    def test_rejects_unbounded_quantifier(self, small_mahlo):
        with pytest.raises(NotRelativizable):
            relativize(ExB("x", LI, LitIn(ZERO, X)), small_mahlo, BIG_K)

    def test_side_conditions(self, small_mahlo):
        assert relativization_side_conditions(LitIn(ZERO, BIG_K), small_mahlo, BIG_K)
        assert not relativization_side_conditions(LitIn(ZERO, OMEGA1), OMEGA, BIG_K)


class TestAssignment:
    """Tests for literal_truth, assign_shape and components."""

    def test_membership(self):
        assert literal_truth(LitIn(ZERO, ONE))
        assert not literal_truth(LitIn(ONE, ZERO))
        assert not literal_truth(LitIn(ZERO, ONE, False))

    @pytest.mark.parametrize("term", [OMEGA1, BIG_K, BIG_I, K_PLUS])
    def test_regular_constants(self, term):
        assert literal_truth(LitReg(term))

    def test_successor_ordinal_is_not_regular(self):
        assert not literal_truth(LitReg(ONE))

    def test_empty_restriction(self):
        assert not literal_truth(LitR("empty", BIG_K, ZERO))
        assert literal_truth(LitR("empty", BIG_K, ZERO, False))

    @pytest.mark.parametrize(
        "literal",
        [
            LitReg(PsiReg(OMEGA1, 1, ZERO)),
            LitR("B", BIG_K, ZERO),
            LitP(ZERO, ZERO, ZERO),
            LitPI(ZERO, 1),
            LitX(0, ZERO),
            LitIn(X, ZERO),
        ],
    )
    def test_undecidable(self, literal):
        with pytest.raises(UndecidableLiteral):
            literal_truth(literal)

    def test_literal_shapes(self):
        finite = IndexDescriptor(IndexKind.FINITE, size=0)
        assert assign_shape(LitIn(ZERO, ONE), 1) == AssignShape(Connective.CONJ, finite)
        assert assign_shape(LitIn(ONE, ZERO), 1) == AssignShape(Connective.DISJ, finite)

    def test_connective_shapes(self):
        formula = Or(LitIn(ZERO, ONE), LitIn(ONE, ZERO))
        shape = assign_shape(formula, 1)
        assert shape.connective is Connective.DISJ
        assert shape.index == IndexDescriptor(IndexKind.FINITE, size=2)
        assert assign_shape(And(formula, formula), 1).connective is Connective.CONJ

    def test_predicate_quantifier_shapes(self):
        assert str(assign_shape(Ex2(BIG_K, LitX(0, ZERO)), 1)) == "(Disj, SymbolicPowerset)"
        assert str(assign_shape(All2(BIG_K, LitX(0, ZERO)), 1)) == "(Conj, SymbolicPowerset)"

    def test_low_level_quantifier_uses_least_witness(self):
        shape = assign_shape(ExB("x", LI, LitIn(ZERO, X)), 1)
        assert shape == AssignShape(
            Connective.DISJ, IndexDescriptor(IndexKind.SYMBOLIC_MU, bound=LI)
        )
        shape = assign_shape(AllB("x", LI, LitIn(ZERO, X)), 1)
        assert shape.connective is Connective.CONJ
        assert shape.index.kind is IndexKind.SYMBOLIC_MU

    def test_impure_quantifier_ranges_over_elements(self):
        shape = assign_shape(ExB("x", OMEGA, LitReg(X)), 1)
        assert shape == AssignShape(
            Connective.DISJ, IndexDescriptor(IndexKind.ELEMENTS_BELOW, bound=OMEGA)
        )

    def test_components(self):
        formula = ExB("x", OMEGA, LitIn(X, OMEGA))
        parts = components(formula, (ZERO, ONE, OMEGA, BIG_K))
        assert parts == [LitIn(ZERO, OMEGA), LitIn(ONE, OMEGA)]

    def test_components_of_connective_and_literal(self):
        left, right = LitIn(ZERO, ONE), LitIn(ONE, ZERO)
        assert components(Or(left, right)) == [left, right]
        assert components(left) == []

    def test_components_of_predicate_quantifier(self):
        formula = Ex2(BIG_K, LitX(0, ZERO))
        assert components(formula, tags=("B",)) == [
            LitR("empty", BIG_K, ZERO),
            LitR("B", BIG_K, ZERO),
        ]


class TestValidateFormula:
    """Tests for validate_formula and negate."""

    def test_closed_sentence(self):
        formula = ExB("x", OMEGA, LitIn(X, OMEGA))
        assert validate_formula(formula) is formula

    def test_free_variable(self):
        with pytest.raises(ValidationError) as exc_info:
            validate_formula(LitIn(Y, ZERO))
        assert exc_info.value.field == "free_variable"
        assert exc_info.value.value == "y"

    def test_constant_not_below_i(self):
        with pytest.raises(ValidationError) as exc_info:
            validate_formula(LitIn(ZERO, BIG_I))
        assert exc_info.value.field == "constant"

    @pytest.mark.parametrize("kappa", [OMEGA1, K_PLUS])
    def test_predicate_bound_range(self, kappa):
        with pytest.raises(ValidationError) as exc_info:
            validate_formula(Ex2(kappa, LitX(0, ZERO)))
        assert exc_info.value.field == "predicate_bound"

    def test_negation_dualises(self):
        formula = ExB("x", OMEGA, Or(LitIn(X, ONE), LitReg(X, False)))
        expected = AllB("x", OMEGA, And(LitIn(X, ONE, False), LitReg(X)))
        assert negate(formula) == expected
        assert negate(negate(formula)) == formula

    def test_negation_of_predicate_quantifier(self):
        assert negate(Ex2(BIG_K, LitX(1, ZERO), 1)) == All2(BIG_K, LitX(1, ZERO, False), 1)
