"""Term and formula parser.

A small Pratt parser: every token kind registers a prefix handler (``nud``)
and, if it can continue an expression, an infix handler (``led``) with a
binding power. Terms and formulas use separate grammars over one token
stream, so a formula literal can hand its arguments to the term grammar.

Parsed values are validated before they are returned; a failed invariant
is reported as a ParseError pointing at the offending subterm.
"""

import re
from typing import Callable, Dict, Iterable, List, NamedTuple, Optional, Tuple

from ...domain.exceptions import ParseError, ValidationError
from ...domain.formulas import (
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
    negate,
)
from ...domain.terms import (
    BIG_I,
    BIG_K,
    OMEGA1,
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
    nat,
)
from ...services.arithmetic_service import OMEGA, mul_nat, omega_mul, omega_tower
from ...services.formula_service import validate_formula
from ...services.validation_service import validate

__all__ = ["Token", "tokenize", "Parser", "parse_term", "parse_terms", "parse_formula"]

MAX_NATURAL = 4096

KEYWORDS = frozenset(
    {
        "w",
        "w1",
        "K",
        "I",
        "L",
        "phi",
        "tower",
        "psi",
        "psiI",
        "psiK",
        "in",
        "P",
        "PI",
        "Reg",
        "R",
        "X",
        "ex",
        "all",
        "EX",
        "ALL",
    }
)

_TOKEN_SPEC = (
    ("num", r"\d+"),
    ("regsucc", r"reg\+"),
    ("name", r"[A-Za-z_][A-Za-z0-9_]*"),
    ("op", r"[+*^(),;\[\]{}<.#~|&]"),
    ("newline", r"\n"),
    ("skip", r"[ \t\r]+"),
    ("error", r"."),
)
_TOKEN_RE = re.compile("|".join(f"(?P<{name}>{text})" for name, text in _TOKEN_SPEC))
_PREDICATE_VAR = re.compile(r"X(\d+)$")


class Token(NamedTuple):
    kind: str
    value: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    """Split ``text`` into tokens, ending with an ``end`` token.

    Keywords and operators use their own text as kind; identifiers are
    ``name`` and decimal numbers ``num``.

    Raises:
        ParseError: On a character no token starts with
    """
    tokens: List[Token] = []
    line, line_start = 1, 0
    for match in _TOKEN_RE.finditer(text):
        kind = str(match.lastgroup)
        value = match.group()
        column = match.start() - line_start + 1
        if kind == "newline":
            line, line_start = line + 1, match.end()
            continue
        if kind == "skip":
            continue
        if kind == "error":
            raise ParseError(f"Unknown symbol '{value}'", line, column)
        if kind == "regsucc":
            kind = "reg+"
        elif kind == "op" or (kind == "name" and value in KEYWORDS):
            kind = value
        tokens.append(Token(kind, value, line, column))
    tokens.append(Token("end", "", line, len(text) - line_start + 1))
    return tokens


Nud = Callable[["Parser", Token], object]
Led = Callable[["Parser", Token, object], object]


class Grammar:
    """Prefix and infix handlers for one expression language."""

    def __init__(self, name: str):
        self.name = name
        self._nud: Dict[str, Nud] = {}
        self._led: Dict[str, Led] = {}
        self._lbp: Dict[str, int] = {}

    def prefix(self, *kinds: str) -> Callable[[Nud], Nud]:
        def wrapper(handler: Nud) -> Nud:
            for kind in kinds:
                self._nud[kind] = handler
            return handler

        return wrapper

    def infix(self, kind: str, lbp: int) -> Callable[[Led], Led]:
        def wrapper(handler: Led) -> Led:
            self._led[kind] = handler
            self._lbp[kind] = lbp
            return handler

        return wrapper

    def nud_for(self, token: Token) -> Optional[Nud]:
        return self._nud.get(token.kind)

    def led_for(self, token: Token) -> Led:
        return self._led[token.kind]

    def starts(self, token: Token) -> bool:
        return token.kind in self._nud

    def lbp(self, token: Token) -> int:
        return self._lbp.get(token.kind, 0)

    def starters(self) -> Tuple[str, ...]:
        return tuple(self._nud)


TERMS = Grammar("term")
FORMULAS = Grammar("formula")


class Parser:
    """Cursor over the tokens of one source text.

    Records where each parsed value started so validation failures can be
    reported at the right column.
    """

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0
        self.positions: Dict[str, Tuple[int, int]] = {}
        self.terms: List[OrdTerm] = []

    @property
    def token(self) -> Token:
        return self.tokens[self.index]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.index + offset, len(self.tokens) - 1)]

    def advance(self, kind: Optional[str] = None) -> Token:
        token = self.token
        if kind is not None and token.kind != kind:
            raise self.error(f"Unexpected {self._describe(token)}", token, expected=(kind,))
        if token.kind != "end":
            self.index += 1
        return token

    def expression(self, grammar: Grammar, rbp: int = 0) -> object:
        start = self.token
        token = self.advance()
        nud = grammar.nud_for(token)
        if nud is None:
            raise self.error(
                f"Unexpected {self._describe(token)} in {grammar.name}",
                token,
                expected=grammar.starters(),
            )
        left = nud(self, token)
        self._note(left, start)
        while rbp < grammar.lbp(self.token):
            token = self.advance()
            left = grammar.led_for(token)(self, token, left)
            self._note(left, start)
        return left

    def term(self) -> OrdTerm:
        value = self.expression(TERMS)
        assert isinstance(value, OrdTerm)
        self.terms.append(value)
        return value

    def term_list(self, closer: str) -> List[OrdTerm]:
        items: List[OrdTerm] = []
        if self.token.kind == closer:
            return items
        items.append(self.term())
        while self.token.kind == ",":
            self.advance()
            items.append(self.term())
        return items

    def formula(self, rbp: int = 0) -> Formula:
        value = self.expression(FORMULAS, rbp)
        assert isinstance(value, Formula)
        return value

    def integer(self) -> int:
        token = self.advance("num")
        value = int(token.value)
        if value > MAX_NATURAL:
            raise self.error(f"Natural {value} exceeds {MAX_NATURAL}", token)
        return value

    def argument(self) -> object:
        """A bound variable or a term."""
        if self.token.kind == "name":
            token = self.advance()
            var = Var(token.value)
            self._note(var, token)
            return var
        return self.term()

    def bound(self) -> object:
        if self.token.kind == "L" or (self.token.kind == "I" and self.peek().kind == "."):
            self.advance()
            return LI
        return self.argument()

    def identifier(self) -> str:
        token = self.token
        if not token.value.isidentifier():
            raise self.error(f"Expected an identifier, got {self._describe(token)}", token)
        return self.advance().value

    def expect_end(self) -> None:
        if self.token.kind != "end":
            raise self.error(
                f"Unexpected {self._describe(self.token)} after expression",
                self.token,
                expected=("end",),
            )

    def position_of(self, value: object) -> Tuple[int, int]:
        return self.positions.get(str(value), (1, 1))

    def error(self, message: str, token: Token, expected: Iterable[str] = ()) -> ParseError:
        return ParseError(message, token.line, token.column, expected)

    def check_term(self, term: OrdTerm, big_n: Optional[int]) -> None:
        report = validate(term, big_n)
        if report.ok:
            return
        violation = report.first
        assert violation is not None
        line, column = self.position_of(violation.subterm)
        raise ParseError(str(violation), line, column)

    def _note(self, value: object, start: Token) -> None:
        self.positions.setdefault(str(value), (start.line, start.column))

    @staticmethod
    def _describe(token: Token) -> str:
        return "end of input" if token.kind == "end" else f"'{token.value}'"


# -- term grammar -----------------------------------------------------


def _parts(term: OrdTerm) -> Tuple[OrdTerm, ...]:
    return term.parts if isinstance(term, Sum) else (term,)


def _call(parser: Parser, *slots: str) -> List[object]:
    """Parse ``(slot sep slot sep ...)``; a slot is 'term', 'int' or 'arg'."""
    parser.advance("(")
    values: List[object] = []
    for i, slot in enumerate(slots):
        if i:
            parser.advance(slot.split(":")[0])
        kind = slot.split(":")[-1]
        if kind == "term":
            values.append(parser.term())
        elif kind == "int":
            values.append(parser.integer())
        else:
            values.append(parser.argument())
    parser.advance(")")
    return values


@TERMS.prefix("num")
def _natural(parser: Parser, token: Token) -> OrdTerm:
    value = int(token.value)
    if value > MAX_NATURAL:
        raise parser.error(f"Natural {value} exceeds {MAX_NATURAL}", token)
    return nat(value)


@TERMS.prefix("w", "w1", "K", "I")
def _constant(parser: Parser, token: Token) -> OrdTerm:
    return {"w": OMEGA, "w1": OMEGA1, "K": BIG_K, "I": BIG_I}[token.kind]


@TERMS.prefix("(")
def _term_group(parser: Parser, token: Token) -> OrdTerm:
    inner = parser.expression(TERMS)
    parser.advance(")")
    assert isinstance(inner, OrdTerm)
    return inner


@TERMS.prefix("phi")
def _phi(parser: Parser, token: Token) -> OrdTerm:
    index, arg = _call(parser, "term", ",:term")
    return Veblen(index, arg)  # type: ignore[arg-type]


@TERMS.prefix("reg+")
def _reg_succ(parser: Parser, token: Token) -> OrdTerm:
    (base,) = _call(parser, "term")
    return RegSucc(base)  # type: ignore[arg-type]


@TERMS.prefix("tower")
def _tower(parser: Parser, token: Token) -> OrdTerm:
    height, base = _call(parser, "int", ",:term")
    return omega_tower(height, base)  # type: ignore[arg-type]


@TERMS.prefix("psi")
def _psi(parser: Parser, token: Token) -> OrdTerm:
    kappa, n, arg = _call(parser, "term", ";:int", ";:term")
    return PsiReg(kappa, n, arg)  # type: ignore[arg-type]


@TERMS.prefix("psiI")
def _psi_i(parser: Parser, token: Token) -> OrdTerm:
    n, arg = _call(parser, "int", ";:term")
    return PsiI(n, arg)  # type: ignore[arg-type]


@TERMS.prefix("psiK")
def _psi_k(parser: Parser, token: Token) -> OrdTerm:
    parser.advance("(")
    n = parser.integer()
    parser.advance(";")
    parser.advance("[")
    seq = parser.term_list("]")
    parser.advance("]")
    parser.advance(";")
    parser.advance("{")
    theta = parser.term_list("}")
    parser.advance("}")
    parser.advance(";")
    arg = parser.term()
    parser.advance(")")
    # kept as written; validation reports unsorted parameters
    return PsiK(n, OrdSeq(tuple(seq)), ThetaSet(tuple(theta)), arg)


@TERMS.infix("+", 10)
def _plus(parser: Parser, token: Token, left: object) -> OrdTerm:
    assert isinstance(left, OrdTerm)
    if not TERMS.starts(parser.token):
        return RegSucc(left)
    right = parser.expression(TERMS, 10)
    assert isinstance(right, OrdTerm)
    return Sum(_parts(left) + _parts(right))


@TERMS.infix("*", 20)
def _times(parser: Parser, token: Token, left: object) -> OrdTerm:
    assert isinstance(left, OrdTerm)
    if parser.token.kind == "num":
        return mul_nat(left, parser.integer())
    if left == OMEGA:
        right = parser.expression(TERMS, 20)
        assert isinstance(right, OrdTerm)
        return omega_mul(right)
    raise parser.error("Only naturals or w*E multiply", parser.token, expected=("num",))


@TERMS.infix("^", 30)
def _power(parser: Parser, token: Token, left: object) -> OrdTerm:
    if left != OMEGA:
        raise parser.error("Only w can be raised to a power", token)
    exponent = parser.expression(TERMS, 29)
    assert isinstance(exponent, OrdTerm)
    return WExp(exponent)


# -- formula grammar --------------------------------------------------


@FORMULAS.prefix("(")
def _formula_group(parser: Parser, token: Token) -> Formula:
    inner = parser.formula()
    parser.advance(")")
    return inner


@FORMULAS.prefix("~")
def _not(parser: Parser, token: Token) -> Formula:
    return negate(parser.formula(40))


@FORMULAS.infix("|", 10)
def _or(parser: Parser, token: Token, left: object) -> Formula:
    assert isinstance(left, Formula)
    return Or(left, parser.formula(10))


@FORMULAS.infix("&", 20)
def _and(parser: Parser, token: Token, left: object) -> Formula:
    assert isinstance(left, Formula)
    return And(left, parser.formula(20))


@FORMULAS.prefix("in")
def _lit_in(parser: Parser, token: Token) -> Formula:
    a, b = _call(parser, "arg", ",:arg")
    return LitIn(a, b)  # type: ignore[arg-type]


@FORMULAS.prefix("P")
def _lit_p(parser: Parser, token: Token) -> Formula:
    t1, t2, t3 = _call(parser, "arg", ",:arg", ",:arg")
    return LitP(t1, t2, t3)  # type: ignore[arg-type]


@FORMULAS.prefix("PI")
def _lit_pi(parser: Parser, token: Token) -> Formula:
    n, t = _call(parser, "int", ";:arg")
    return LitPI(t, n)  # type: ignore[arg-type]


@FORMULAS.prefix("Reg")
def _lit_reg(parser: Parser, token: Token) -> Formula:
    (t,) = _call(parser, "arg")
    return LitReg(t)  # type: ignore[arg-type]


@FORMULAS.prefix("X")
def _lit_x(parser: Parser, token: Token) -> Formula:
    index, t = _call(parser, "int", ";:arg")
    return LitX(index, t)  # type: ignore[arg-type]


@FORMULAS.prefix("R")
def _lit_r(parser: Parser, token: Token) -> Formula:
    parser.advance("(")
    prefix = parser.advance("name")
    if prefix.value != "b":
        raise parser.error(f"Expected 'b#tag', got '{prefix.value}'", prefix, expected=("b",))
    parser.advance("#")
    tag = parser.identifier()
    parser.advance(",")
    kappa = parser.term()
    parser.advance(";")
    t = parser.argument()
    parser.advance(")")
    return LitR(tag, kappa, t)  # type: ignore[arg-type]


@FORMULAS.prefix("ex", "all")
def _bounded(parser: Parser, token: Token) -> Formula:
    var = parser.advance("name").value
    parser.advance("<")
    bound = parser.bound()
    parser.advance(".")
    body = parser.formula()
    if token.kind == "ex":
        return ExB(var, bound, body)  # type: ignore[arg-type]
    return AllB(var, bound, body)  # type: ignore[arg-type]


@FORMULAS.prefix("EX", "ALL")
def _second_order(parser: Parser, token: Token) -> Formula:
    name = parser.advance("name")
    match = _PREDICATE_VAR.match(name.value)
    if match is None:
        raise parser.error(f"Expected X<digits>, got '{name.value}'", name)
    parser.advance("<")
    kappa = parser.term()
    parser.advance(".")
    body = parser.formula()
    if token.kind == "EX":
        return Ex2(kappa, body, int(match.group(1)))
    return All2(kappa, body, int(match.group(1)))


# -- entry points -----------------------------------------------------


def parse_term(text: str, big_n: Optional[int] = None, check: bool = True) -> OrdTerm:
    """Parse and validate one ordinal term.

    Args:
        text: Source in the term grammar
        big_n: Sequence length required of psiK terms (defaults to settings)
        check: Validate the parsed term; off for input that is normalised first

    Raises:
        ParseError: On a syntax error or a failed invariant
    """
    parser = Parser(text)
    term = parser.term()
    parser.expect_end()
    if check:
        parser.check_term(term, big_n)
    return term


def parse_terms(text: str, big_n: Optional[int] = None) -> List[OrdTerm]:
    """Parse a comma separated, possibly empty, list of terms."""
    parser = Parser(text)
    terms = parser.term_list("end")
    parser.expect_end()
    for term in terms:
        parser.check_term(term, big_n)
    return terms


def parse_formula(text: str, big_n: Optional[int] = None) -> Formula:
    """Parse and validate a closed formula.

    Raises:
        ParseError: On a syntax error, an invalid term, a free variable or a
            constant outside the admitted range
    """
    parser = Parser(text)
    formula = parser.formula()
    parser.expect_end()
    for term in parser.terms:
        parser.check_term(term, big_n)
    try:
        validate_formula(formula)
    except ValidationError as e:
        line, column = parser.positions.get(e.value or "", (1, 1))
        raise ParseError(e.message, line, column) from e
    return formula
