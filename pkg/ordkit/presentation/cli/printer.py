"""Plain-text rendering of command results.

Terms and formulas print through ``str``, which emits the same grammar the
parser reads. Records are rendered one field per line.
"""

from typing import Iterable, List, Optional

from ...domain.entities import (
    AbgamRecord,
    AssignShape,
    BoundState,
    ClassifyResult,
    HullClause,
    SuiteResult,
)
from ...domain.formulas import Formula
from ...domain.terms import OrdTerm

MAX_FAILURES_SHOWN = 20


def print_term(term: OrdTerm) -> str:
    return str(term)


def print_formula(formula: Formula) -> str:
    return str(formula)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def render_abgam(record: AbgamRecord) -> List[str]:
    lines = [f"b_{record.n} = {record.b}", f"a_{record.n} = {record.a}"]
    for k in sorted(record.gamma):
        lines.append(f"gamma_{k} = {record.gamma[k]}")
    for k in sorted(record.alpha_vec):
        lines.append(f"alpha_{k} = {record.alpha_vec[k]}")
    return lines


def render_classify(result: ClassifyResult, shape: Optional[AssignShape] = None) -> List[str]:
    level = "-" if result.pi1_level is None else str(result.pi1_level)
    lines = [
        f"delta0: {_yes(result.is_delta0_lambda)}",
        f"sigma_sigma: {_yes(result.is_sigma_sigma)}",
        f"pi1_level: {level}",
    ]
    if shape is not None:
        lines.append(f"shape: {shape}")
    return lines


def render_hull(term: OrdTerm, clause: Optional[HullClause]) -> List[str]:
    if clause is None:
        return [f"{term}: not in hull"]
    lines = [f"{term}: in hull by {clause.name}"]
    lines.extend(f"  premise {premise}" for premise in clause.premises)
    return lines


def render_state(index: int, state: BoundState) -> List[str]:
    lines = [
        f"[{index}] {state.note}",
        f"  theory: {state.theory}  n: {state.n}  N: {state.big_n}",
        f"  height: {state.height}",
        f"  cut rank: {state.cut_rank}",
        f"  hull stage: {state.hull_stage}",
    ]
    lines.extend(f"  - {condition}" for condition in state.side_conditions)
    return lines


def render_trace(states: Iterable[BoundState]) -> List[str]:
    lines: List[str] = []
    for i, state in enumerate(states):
        lines.extend(render_state(i, state))
    return lines


def render_suite(result: SuiteResult) -> List[str]:
    """Summary line plus the first failures; timings go to the log only."""
    if result.passed:
        return [f"{result.name}: {result.checked} checked, ok"]
    lines = [f"{result.name}: {result.checked} checked, {len(result.failures)} FAILED"]
    lines.extend(f"  {failure}" for failure in result.failures[:MAX_FAILURES_SHOWN])
    hidden = len(result.failures) - MAX_FAILURES_SHOWN
    if hidden > 0:
        lines.append(f"  ... {hidden} more")
    return lines
