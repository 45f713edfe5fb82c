"""Tagged-variant JSON codec for terms, formulas and command results.

Every term or formula becomes an object whose ``"t"`` key names the
variant; the remaining keys are the variant's fields. A formula field
called ``t`` is written as ``"term"`` to keep the tag unambiguous.
"""

import json
from dataclasses import fields
from typing import Any, Dict, Mapping, Type

from ...domain import formulas as formula_module
from ...domain import terms as term_module
from ...domain.entities import (
    AbgamRecord,
    AssignShape,
    BoundState,
    ClassifyResult,
    HullClause,
    SideCondition,
    SuiteResult,
)
from ...domain.exceptions import DomainException, ParseError
from ...domain.formulas import Formula, UniverseBound, Var
from ...domain.terms import OrdSeq, OrdTerm, ThetaSet

__all__ = [
    "encode",
    "decode_term",
    "decode_formula",
    "decode_state",
    "dumps",
    "loads_term",
    "encode_error",
]

_TERM_TYPES: Dict[str, Type[OrdTerm]] = {
    cls.__name__: cls
    for cls in (
        term_module.Zero,
        term_module.One,
        term_module.Omega1,
        term_module.BigK,
        term_module.BigI,
        term_module.Sum,
        term_module.WExp,
        term_module.Veblen,
        term_module.RegSucc,
        term_module.PsiReg,
        term_module.PsiI,
        term_module.PsiK,
    )
}
_FORMULA_TYPES: Dict[str, Type[Formula]] = {
    cls.__name__: cls
    for cls in (
        formula_module.LitIn,
        formula_module.LitP,
        formula_module.LitPI,
        formula_module.LitReg,
        formula_module.LitR,
        formula_module.LitX,
        formula_module.Or,
        formula_module.And,
        formula_module.ExB,
        formula_module.AllB,
        formula_module.Ex2,
        formula_module.All2,
    )
}
_ALIASES = {"t": "term"}
_REVERSE_ALIASES = {alias: name for name, alias in _ALIASES.items()}


def _encode_variant(value: Any) -> Dict[str, Any]:
    out: Dict[str, Any] = {"t": type(value).__name__}
    for f in fields(value):
        out[_ALIASES.get(f.name, f.name)] = encode(getattr(value, f.name))
    return out


def encode(value: Any) -> Any:
    """Turn a domain value into plain JSON data."""
    if isinstance(value, (OrdTerm, Formula)):
        return _encode_variant(value)
    if isinstance(value, (OrdSeq, ThetaSet, tuple, list)):
        return [encode(item) for item in value]
    if isinstance(value, Var):
        return {"t": "Var", "name": value.name}
    if isinstance(value, UniverseBound):
        return {"t": "L"}
    if isinstance(value, SideCondition):
        return {"label": value.label, "holds": value.holds, "asserted": value.asserted}
    if isinstance(value, BoundState):
        return {
            "height": encode(value.height),
            "cut_rank": encode(value.cut_rank),
            "hull_stage": encode(value.hull_stage),
            "theory": value.theory,
            "n": value.n,
            "N": value.big_n,
            "note": value.note,
            "side_conditions": encode(value.side_conditions),
        }
    if isinstance(value, AbgamRecord):
        return {
            "n": value.n,
            "N": value.big_n,
            "b": encode(value.b),
            "a": encode(value.a),
            "gamma": {str(k): encode(v) for k, v in sorted(value.gamma.items())},
            "alpha_vec": {str(k): encode(v) for k, v in sorted(value.alpha_vec.items())},
        }
    if isinstance(value, ClassifyResult):
        return {
            "delta0": value.is_delta0_lambda,
            "sigma_sigma": value.is_sigma_sigma,
            "pi1_level": value.pi1_level,
        }
    if isinstance(value, HullClause):
        return {"clause": value.name, "premises": encode(value.premises)}
    if isinstance(value, AssignShape):
        index = value.index
        return {
            "connective": str(value.connective),
            "index": {
                "kind": str(index.kind),
                "size": index.size,
                "bound": None if index.bound is None else encode(index.bound),
            },
        }
    if isinstance(value, SuiteResult):
        return {
            "suite": value.name,
            "checked": value.checked,
            "passed": value.passed,
            "failures": list(value.failures),
        }
    if isinstance(value, Mapping):
        return {str(key): encode(item) for key, item in value.items()}
    if value is None or isinstance(value, (bool, int, str)):
        return value
    raise TypeError(f"Cannot encode {type(value).__name__}")


def _field(name: str, raw: Any) -> Any:
    if name == "seq":
        return OrdSeq(tuple(decode_term(item) for item in raw))
    if name == "theta":
        return ThetaSet(tuple(decode_term(item) for item in raw))
    if name == "parts":
        return tuple(decode_term(item) for item in raw)
    if isinstance(raw, Mapping):
        tag = raw.get("t")
        if tag == "Var":
            return Var(raw["name"])
        if tag == "L":
            return formula_module.LI
        if tag in _FORMULA_TYPES:
            return decode_formula(raw)
        return decode_term(raw)
    return raw


def _decode_variant(data: Mapping[str, Any], table: Mapping[str, type]) -> Any:
    if not isinstance(data, Mapping) or data.get("t") not in table:
        raise ParseError(f"Unknown variant {data!r:.60}")
    cls = table[data["t"]]
    kwargs = {}
    for key, raw in data.items():
        if key == "t":
            continue
        name = _REVERSE_ALIASES.get(key, key)
        kwargs[name] = _field(name, raw)
    try:
        return cls(**kwargs)
    except TypeError as e:
        raise ParseError(f"Bad fields for {data['t']}: {e}") from e


def decode_term(data: Mapping[str, Any]) -> OrdTerm:
    """Rebuild a term from its tagged JSON form."""
    return _decode_variant(data, _TERM_TYPES)


def decode_formula(data: Mapping[str, Any]) -> Formula:
    return _decode_variant(data, _FORMULA_TYPES)


def decode_state(data: Mapping[str, Any]) -> BoundState:
    return BoundState(
        height=decode_term(data["height"]),
        cut_rank=decode_term(data["cut_rank"]),
        hull_stage=decode_term(data["hull_stage"]),
        theory=data["theory"],
        n=data["n"],
        big_n=data["N"],
        note=data.get("note", ""),
        side_conditions=tuple(
            SideCondition(c["label"], c["holds"], c.get("asserted", False))
            for c in data.get("side_conditions", [])
        ),
    )


def dumps(data: Any) -> str:
    """Stable JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(encode(data), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads_term(text: str) -> OrdTerm:
    try:
        return decode_term(json.loads(text))
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from e


def encode_error(error: DomainException) -> Dict[str, Any]:
    out: Dict[str, Any] = {"code": error.code, "message": error.message}
    if isinstance(error, ParseError):
        out.update(line=error.line, column=error.column, expected=list(error.expected))
    return {"error": out}
