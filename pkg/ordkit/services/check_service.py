"""Check Service - The property suites behind ``ordkit check``.

Each suite returns a SuiteResult with the number of checks made and a
description of every failure. Suites:
- order: trichotomy, irreflexivity and transitivity over an enumerated pool
- identities: the gamma/a_n absorption laws and the alpha-bar components
- inequalities: tower and collapse inequalities along the traces
- rank: rank bounds and class promotion over a random formula corpus
- hull: monotonicity of hull membership and collapse bounds
- pipeline: the two end-to-end traces
"""

import random
import time
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..domain.entities import HullQuery, SuiteResult
from ..domain.exceptions import IncomparableSubscript, NotRelativizable
from ..domain.formulas import (
    EMPTY_TAG,
    LI,
    All2,
    AllB,
    And,
    Ex2,
    ExB,
    Formula,
    LitIn,
    LitP,
    LitPI,
    LitR,
    LitReg,
    LitX,
    Or,
    Var,
)
from ..domain.terms import (
    BIG_I,
    BIG_K,
    OMEGA1,
    ONE,
    ZERO,
    OrdSeq,
    OrdTerm,
    PsiI,
    PsiK,
    PsiReg,
    RegSucc,
    ThetaSet,
    nat,
)
from ..domain.value_objects import IndexKind, Ordering
from ..infrastructure.config import get_settings
from ..infrastructure.logging import get_logger
from .arithmetic_service import OMEGA, add, omega_mul, omega_tower
from .bound_service import theorem1_trace, theorem2_trace
from .enumeration_service import enumerate_below
from .formula_service import (
    assign_shape,
    classify,
    components,
    is_delta0,
    is_exempt_shape,
    is_sigma_sigma,
    k_all,
    rank,
    relativization_side_conditions,
    relativize,
    rk_l,
)
from .hull_service import in_hull, nf_valid
from .mahlo_service import abgam
from .order_service import cmp, sort_terms, theta_set

logger = get_logger(__name__)

LT, EQ, GT = Ordering.LT, Ordering.EQ, Ordering.GT

K_PLUS = RegSucc(BIG_K)

# Constants formulas are built from
FORMULA_POOL: Tuple[OrdTerm, ...] = (ZERO, ONE, OMEGA1, BIG_K, K_PLUS)

# Witnesses used to instantiate quantifiers when listing components
COMPONENT_SAMPLES: Tuple[OrdTerm, ...] = (ZERO, ONE, nat(2), OMEGA, OMEGA1, BIG_K, K_PLUS)

# A regular strictly between w1 and K to relativize to
SMALL_MAHLO = PsiK(1, OrdSeq((ZERO, ZERO)), ThetaSet(), ZERO)

# Subscripts the formula suites run at
RANK_SUBSCRIPTS: Tuple[int, ...] = (1, 2, 3)

# Term sizes for hull members and for the stages they are tested at
HULL_TERM_SIZE = 5
HULL_STAGE_SIZE = 4

HULL_TRIALS = 200
HULL_TRIAL_TERMS = 50

Suite = Callable[[], SuiteResult]


class FormulaGenerator:
    """Random closed formulas of bounded depth over a fixed constant pool.

    Attributes:
        rng: Source of randomness (seeded for reproducible corpora)
        pool: Constants used as literal arguments and bounds
    """

    def __init__(self, seed: int = 0, pool: Sequence[OrdTerm] = FORMULA_POOL):
        self.rng = random.Random(seed)
        self.pool = tuple(pool)

    def corpus(self, size: int, depth: int = 4) -> List[Formula]:
        return [self.formula(depth) for _ in range(size)]

    def formula(self, depth: int) -> Formula:
        roll = self.rng.random()
        if roll < 0.05:
            return self._pi_shape()
        if roll < 0.1:
            return self._p_shape()
        return self._formula(depth, (), ())

    def _arg(self, scope: Sequence[str]) -> object:
        if scope and self.rng.random() < 0.5:
            return Var(self.rng.choice(scope))
        return self.rng.choice(self.pool)

    def _bound(self, scope: Sequence[str]) -> object:
        roll = self.rng.random()
        if roll < 0.2:
            return LI
        if scope and roll < 0.45:
            return Var(self.rng.choice(scope))
        return self.rng.choice(self.pool)

    def _literal(self, scope: Sequence[str], indices: Sequence[int]) -> Formula:
        positive = self.rng.random() < 0.6
        kinds = ["in", "in", "P", "PI", "Reg", "R"] + (["X", "X"] if indices else [])
        kind = self.rng.choice(kinds)
        if kind == "in":
            return LitIn(self._arg(scope), self._arg(scope), positive)
        if kind == "P":
            return LitP(self._arg(scope), self._arg(scope), self._arg(scope), positive)
        if kind == "PI":
            return LitPI(self._arg(scope), self.rng.choice(RANK_SUBSCRIPTS), positive)
        if kind == "Reg":
            return LitReg(self._arg(scope), positive)
        if kind == "R":
            tag = self.rng.choice((EMPTY_TAG, "B"))
            return LitR(tag, BIG_K, self._arg(scope), positive)
        return LitX(self.rng.choice(indices), self._arg(scope), positive)

    def _formula(self, depth: int, scope: Tuple[str, ...], indices: Tuple[int, ...]) -> Formula:
        if depth == 0 or self.rng.random() < 0.25:
            return self._literal(scope, indices)
        kind = self.rng.choice(("or", "and", "ex", "all", "EX", "ALL"))
        if kind in ("or", "and"):
            left = self._formula(depth - 1, scope, indices)
            right = self._formula(depth - 1, scope, indices)
            return Or(left, right) if kind == "or" else And(left, right)
        if kind in ("ex", "all"):
            var = f"x{len(scope)}"
            bound = self._bound(scope)
            body = self._formula(depth - 1, scope + (var,), indices)
            return ExB(var, bound, body) if kind == "ex" else AllB(var, bound, body)
        index = len(indices)
        body = self._formula(depth - 1, scope, indices + (index,))
        return Ex2(BIG_K, body, index) if kind == "EX" else All2(BIG_K, body, index)

    def _pi_shape(self) -> Formula:
        b = self.rng.choice(self.pool)
        n = self.rng.choice(RANK_SUBSCRIPTS)
        x = Var("x0")
        if self.rng.random() < 0.5:
            return ExB("x0", LI, And(LitIn(b, x), LitPI(x, n)))
        return AllB("x0", LI, Or(LitIn(b, x, False), LitPI(x, n, False)))

    def _p_shape(self) -> Formula:
        b = self.rng.choice(self.pool)
        x, y = Var("x0"), Var("x1")
        if self.rng.random() < 0.5:
            return ExB("x0", K_PLUS, ExB("x1", K_PLUS, And(LitIn(b, x), LitP(K_PLUS, x, y))))
        return AllB(
            "x0",
            K_PLUS,
            AllB("x1", K_PLUS, Or(LitIn(b, x, False), LitP(K_PLUS, x, y, False))),
        )


class PropertyChecker:
    """Runs the property suites.

    Args:
        size: Largest term size enumerated for the term suites
        corpus_size: Number of random formulas in the rank suite
        seed: Seed of the formula corpus and of sampled pairs
    """

    def __init__(self, size: int = 6, corpus_size: Optional[int] = None, seed: int = 0):
        self.size = size
        self.corpus_size = get_settings().corpus_size if corpus_size is None else corpus_size
        self.seed = seed
        self._extra: Dict[str, Suite] = {}

    def register(self, name: str, suite: Suite) -> None:
        """Add a suite run after the built-in ones."""
        self._extra[name] = suite

    def suites(self) -> Dict[str, Suite]:
        built_in: Dict[str, Suite] = {
            "order": self.order_axioms,
            "identities": self.identities,
            "inequalities": self.inequalities,
            "rank": self.rank_suite,
            "hull": self.hull_suite,
            "pipeline": self.pipeline,
        }
        built_in.update(self._extra)
        return built_in

    def run_all(self, only: Optional[Sequence[str]] = None) -> List[SuiteResult]:
        results = []
        for name, suite in self.suites().items():
            if only and name not in only:
                continue
            results.append(suite())
        return results

    # -- suites ---------------------------------------------------------

    def order_axioms(self) -> SuiteResult:
        """Compare every pair of the enumerated pool in both directions.

        Each pair must agree with its position in the sorted pool. A relation
        that agrees with a strict linear order on all pairs is irreflexive,
        trichotomous and transitive, so no triple needs visiting.
        """
        result, started = SuiteResult("order"), time.perf_counter()
        ordered = sort_terms(enumerate_below(BIG_I, self.size))
        for term in ordered:
            result.checked += 1
            if cmp(term, term) is not EQ:
                result.failures.append(f"irreflexivity: {term}")
        for i, s in enumerate(ordered):
            for t in ordered[i + 1 :]:
                result.checked += 1
                forward, backward = cmp(s, t), cmp(t, s)
                if forward is LT and backward is GT:
                    continue
                if forward is EQ or backward is EQ:
                    result.failures.append(f"distinct terms compare equal: {s}, {t}")
                elif forward is not backward.flip():
                    result.failures.append(f"antisymmetry: {s} vs {t}")
                else:
                    result.failures.append(f"transitivity: {s} vs {t} disagrees with sorted order")
        return self._finish(result, started)

    def identities(self) -> SuiteResult:
        result, started = SuiteResult("identities"), time.perf_counter()
        for n in range(1, 5):
            for big_n in range(1, 4):
                record = abgam(n, big_n)
                for k in range(1, big_n + 1):
                    result.checked += 1
                    if cmp(add(record.gamma[k], record.a), record.gamma[k - 1]) is not EQ:
                        result.failures.append(f"gamma_{k},{n} + a_{n} != gamma_{k - 1},{n}")
                result.checked += 1
                if cmp(add(BIG_K, omega_mul(record.a)), record.a) is not EQ:
                    result.failures.append(f"K + w*a_{n} != a_{n}")
                for k in range(big_n + 1):
                    for i, item in enumerate(record.alpha_vec[k]):
                        result.checked += 1
                        if cmp(item, record.gamma[k + i]) is not EQ:
                            result.failures.append(f"alpha_{k},{n}({i}) != gamma_{k + i},{n}")
        return self._finish(result, started)

    def inequalities(self) -> SuiteResult:
        result, started = SuiteResult("inequalities"), time.perf_counter()
        i_plus_one = add(BIG_I, ONE)
        for m in range(5):
            for p in range(5):
                result.checked += 1
                top = omega_tower(m + 2, i_plus_one)
                height = omega_tower(m + 1, add(BIG_I, add(BIG_I, nat(p))))
                if cmp(top, height) is not GT:
                    result.failures.append(f"w_{m + 2}(I+1) <= w_{m + 1}(I*2+{p})")
        i_two_omega = add(BIG_I, add(BIG_I, OMEGA))
        for n in range(3, 7):
            for m in range(n - 2):
                result.checked += 1
                high = PsiReg(OMEGA1, n, omega_tower(n - 1, i_plus_one))
                low = PsiReg(OMEGA1, n, omega_tower(m + 1, i_two_omega))
                if cmp(high, low) is not GT:
                    result.failures.append(f"psi(w1; {n}) tower inequality fails for m={m}")
        for n0, n in combinations(range(1, 5), 2):
            result.checked += 1
            first, second = abgam(n0, 2), abgam(n, 2)
            low = PsiK(n0, first.alpha_vec[0], ThetaSet(), first.gamma[0])
            high = PsiK(n, second.alpha_vec[0], ThetaSet(), second.gamma[0])
            try:
                holds = cmp(low, high) is not GT
            except IncomparableSubscript:
                holds = False
            if not holds:
                result.failures.append(f"psiK at n={n0} exceeds psiK at n={n}")
        return self._finish(result, started)

    def rank_suite(self) -> SuiteResult:
        result, started = SuiteResult("rank"), time.perf_counter()
        ceiling = add(BIG_I, OMEGA)
        lambdas = (OMEGA1, BIG_K, BIG_I)
        for formula in FormulaGenerator(self.seed).corpus(self.corpus_size):
            r = rank(formula)
            result.checked += 1
            if cmp(r, ceiling) is not LT:
                result.failures.append(f"rank {r} not below I+w: {formula}")
            if any(cmp(rk_l(t), r) is GT for t in k_all(formula)):
                result.failures.append(f"coefficient above rank {r}: {formula}")
            for n in RANK_SUBSCRIPTS:
                self._check_descent(formula, r, n, result)
                for lam in lambdas:
                    if cmp(r, lam) is LT:
                        if not is_delta0(formula, lam):
                            result.failures.append(f"rank {r} < {lam} but not Delta_0: {formula}")
                        if not is_sigma_sigma(formula, lam, n):
                            result.failures.append(
                                f"rank {r} < {lam} but not Sigma^Sigma_{n + 1}: {formula}"
                            )
                for lam in (BIG_K, BIG_I):
                    if not is_sigma_sigma(formula, lam, n):
                        continue
                    if not is_sigma_sigma(formula, lam, n + 1):
                        result.failures.append(f"Sigma^Sigma not monotone past n={n}: {formula}")
                    for part in components(formula, COMPONENT_SAMPLES, ("B",)):
                        if not is_sigma_sigma(part, lam, n):
                            result.failures.append(f"component leaves Sigma^Sigma_{n + 1}: {part}")
                self._check_relativization(formula, n, result)
            self._check_shape_monotone(formula, result)
        return self._finish(result, started)

    def hull_suite(self) -> SuiteResult:
        result, started = SuiteResult("hull"), time.perf_counter()
        bound = add(BIG_I, ONE)
        pool = enumerate_below(bound, min(self.size, HULL_TERM_SIZE))
        stages = enumerate_below(bound, min(self.size, HULL_STAGE_SIZE))
        self._check_stage_monotone(pool, stages, result)
        self._check_parameter_monotone(pool, stages, result)
        collapses = [t for t in pool if isinstance(t, (PsiReg, PsiI, PsiK))]
        for term in collapses:
            result.checked += 1
            if not nf_valid(term):
                result.failures.append(f"enumerated collapse fails the normal form: {term}")
            if cmp(term, self._collapse_target(term)) is not LT:
                result.failures.append(f"collapse not below its target: {term}")
        for s, t in combinations(collapses, 2):
            if type(s) is not type(t) or s.n != t.n or not self._same_target(s, t):
                continue
            result.checked += 1
            if cmp(s.arg, t.arg) is LT and cmp(s, t) is not LT:
                result.failures.append(f"collapse not monotone in its argument: {s}, {t}")
        return self._finish(result, started)

    def pipeline(self) -> SuiteResult:
        result, started = SuiteResult("pipeline"), time.perf_counter()
        for m in range(3):
            for p in range(3):
                for big_n in range(1, 4):
                    states = theorem1_trace(m, p, big_n)
                    final = states[-1]
                    record = abgam(final.n, big_n)
                    result.checked += 1
                    if len(states) != 4 + big_n:
                        result.failures.append(f"thm1({m},{p},{big_n}) has {len(states)} states")
                    if (final.theory, final.cut_rank) != (0, BIG_K):
                        result.failures.append(f"thm1({m},{p},{big_n}) ends at {final.note}")
                    if cmp(final.hull_stage, record.gamma[0]) is not EQ:
                        result.failures.append(f"thm1({m},{p},{big_n}) hull stage off")
                    if cmp(final.height, record.a) is not EQ:
                        result.failures.append(f"thm1({m},{p},{big_n}) height off")
                    self._check_conditions(states, f"thm1({m},{p},{big_n})", result)
        for m in range(3):
            for big_n in range(1, 3):
                states = theorem2_trace(m, 0, big_n)
                result.checked += 1
                final = states[-1]
                if not (isinstance(final.height, PsiReg) and final.height.kappa == OMEGA1):
                    result.failures.append(f"thm2({m},0,{big_n}) does not end below w1")
                self._check_conditions(states, f"thm2({m},0,{big_n})", result)
        return self._finish(result, started)

    # -- helpers --------------------------------------------------------

    @staticmethod
    def _check_stage_monotone(
        pool: Sequence[OrdTerm], stages: Sequence[OrdTerm], result: SuiteResult
    ) -> None:
        """Once a term enters the hull at some stage it stays in at every later one."""
        full = theta_set(t for t in stages if cmp(t, BIG_K) is not GT)
        for term in pool:
            entered: Optional[OrdTerm] = None
            for stage in stages:
                result.checked += 1
                member = in_hull(term, HullQuery(stage))
                if member and entered is None:
                    entered = stage
                elif not member and entered is not None:
                    result.failures.append(
                        f"hull not monotone in alpha: {term} in at {entered}, out at {stage}"
                    )
                    break
            result.checked += 1
            if in_hull(term, HullQuery(BIG_I)) and not in_hull(term, HullQuery(BIG_I, theta=full)):
                result.failures.append(f"hull not monotone in theta at {term}")

    def _check_parameter_monotone(
        self, pool: Sequence[OrdTerm], stages: Sequence[OrdTerm], result: SuiteResult
    ) -> None:
        """Random nested parameter sets and ordered thresholds at random stages."""
        rng = random.Random(self.seed)
        params = [t for t in stages if cmp(t, BIG_K) is not GT]
        for _ in range(HULL_TRIALS):
            wide = theta_set(rng.sample(params, rng.randint(0, min(len(params), 4))))
            narrow = theta_set(t for t in wide if rng.random() < 0.5)
            low, high = sorted((rng.randrange(len(stages)), rng.randrange(len(stages))))
            alpha = rng.choice(stages)
            base = HullQuery(alpha, threshold=stages[low], theta=narrow)
            wider = HullQuery(alpha, threshold=stages[low], theta=wide)
            higher = HullQuery(alpha, threshold=stages[high], theta=narrow)
            for term in rng.sample(list(pool), min(len(pool), HULL_TRIAL_TERMS)):
                result.checked += 1
                if not in_hull(term, base):
                    continue
                if not in_hull(term, wider):
                    result.failures.append(f"hull not monotone in theta at {term}, alpha {alpha}")
                if not in_hull(term, higher):
                    result.failures.append(
                        f"hull not monotone in threshold at {term}: {stages[low]} to {stages[high]}"
                    )

    @staticmethod
    def _check_descent(formula: Formula, r: OrdTerm, n: int, result: SuiteResult) -> None:
        if isinstance(formula, (Ex2, All2)) or is_exempt_shape(formula):
            return
        if isinstance(formula, (Or, And)):
            parts = [formula.left, formula.right]
        elif isinstance(formula, (ExB, AllB)):
            if assign_shape(formula, n).index.kind is not IndexKind.ELEMENTS_BELOW:
                return
            parts = components(formula, COMPONENT_SAMPLES)
        else:
            return
        for part in parts:
            if cmp(rank(part), r) is not LT:
                result.failures.append(f"component rank not below {r} at n={n}: {part}")

    @staticmethod
    def _check_shape_monotone(formula: Formula, result: SuiteResult) -> None:
        """A quantifier read as a symbolic mu-index stays one at larger n."""
        if not isinstance(formula, (ExB, AllB)):
            return
        shapes = [assign_shape(formula, n) for n in RANK_SUBSCRIPTS]
        for n, (low, high) in zip(RANK_SUBSCRIPTS, zip(shapes, shapes[1:])):
            if low.connective is not high.connective:
                result.failures.append(f"connective changes past n={n}: {formula}")
            elif (
                low.index.kind is IndexKind.SYMBOLIC_MU
                and high.index.kind is not IndexKind.SYMBOLIC_MU
            ):
                result.failures.append(f"mu-index lost past n={n}: {formula}")

    @staticmethod
    def _check_relativization(formula: Formula, n: int, result: SuiteResult) -> None:
        if not relativization_side_conditions(formula, SMALL_MAHLO, BIG_K):
            return
        try:
            relativized = relativize(formula, SMALL_MAHLO, BIG_K)
        except NotRelativizable:
            return
        before = classify(formula, BIG_K, n).pi1_level
        after = classify(relativized, SMALL_MAHLO, n).pi1_level
        if before != after:
            result.failures.append(f"relativization changes the Pi^1 level at n={n}: {formula}")

    @staticmethod
    def _collapse_target(term: OrdTerm) -> OrdTerm:
        if isinstance(term, PsiReg):
            return term.kappa
        return BIG_K if isinstance(term, PsiK) else BIG_I

    @staticmethod
    def _same_target(s: OrdTerm, t: OrdTerm) -> bool:
        if isinstance(s, PsiReg):
            return s.kappa == t.kappa
        if isinstance(s, PsiK):
            return (s.seq, s.theta) == (t.seq, t.theta)
        return True

    @staticmethod
    def _check_conditions(states, label: str, result: SuiteResult) -> None:
        for state in states:
            for condition in state.side_conditions:
                if not condition.holds:
                    result.failures.append(f"{label}: {state.note}: {condition.label}")

    @staticmethod
    def _finish(result: SuiteResult, started: float) -> SuiteResult:
        result.seconds = time.perf_counter() - started
        logger.info(
            "suite_finished",
            suite=result.name,
            checked=result.checked,
            failures=len(result.failures),
            seconds=round(result.seconds, 3),
        )
        return result
