"""
Expression Parser for hahnlog
Tokenizer and recursive-descent parser for series expressions, exponent
and cutoff literals, SupportMap literals and index sets.

Grammar::

    series   = term {("+" | "-") term}
    term     = ["-"] factor {"*" factor}
    factor   = rational | mono | name | "(" series ")" | "O" "(" (mono | "1") ")"
    mono     = "t" ["^" exponent]
    exponent = signed | "(" signed {"," signed} ")"
    signed   = ["-"] rational
    rational = int ["/" int]

A bare ``t`` means t^1 and is only allowed at rank 1.
"""

import re
from fractions import Fraction
from typing import Dict, FrozenSet, Iterator, List, Mapping, NamedTuple, Optional, Tuple

from config.settings import DISPLAY_CONFIG
from core.errors import ExprSyntaxError, RankMismatch, UnknownName
from core.hahnseries import EXACT, Cutoff, Series, s_add, s_mul, s_neg
from core.lexprod import SupportMap
from core.ordgroup import GroupElement

VARIABLE = DISPLAY_CONFIG["series_variable"]
BIG_O = "O"

TOKEN_PATTERNS = {
    "int": r"\d+",
    "name": r"[A-Za-z_][A-Za-z0-9_]*",
    "lpar": r"\(",
    "rpar": r"\)",
    "lbrace": r"\{",
    "rbrace": r"\}",
    "plus": r"\+",
    "minus": r"-",
    "star": r"\*",
    "slash": r"/",
    "caret": r"\^",
    "comma": r",",
    "colon": r":",
    "skip": r"[ \t]+",
    "error": r".",
}
TOKEN_REGEX = re.compile("|".join(f"(?P<{name}>{text})" for name, text in TOKEN_PATTERNS.items()))


class Token(NamedTuple):
    kind: str
    value: str
    where: Tuple[int, int]


def tokenize(source: str) -> Iterator[Token]:
    """Split ``source`` into tokens; unknown characters are syntax errors."""
    for mo in TOKEN_REGEX.finditer(source):
        kind = str(mo.lastgroup)
        where = mo.start(), mo.end()
        if kind == "skip":
            continue
        if kind == "error":
            raise ExprSyntaxError(f"unexpected character '{mo.group()}'", where, source)
        yield Token(kind, mo.group(), where)


# ============================================================================
# PARSER
# ============================================================================

class Parser:
    """Recursive-descent parser over one source string."""

    def __init__(self, source: str, rank: int, bindings: Optional[Mapping[str, Series]] = None):
        self.source = source
        self.rank = rank
        self.bindings = bindings or {}
        self.tokens: List[Token] = list(tokenize(source))
        self.pos = 0

    # --------------------------------------------------------------- helpers

    def peek(self, offset: int = 0) -> Optional[Token]:
        index = self.pos + offset
        return self.tokens[index] if index < len(self.tokens) else None

    def error(self, detail: str, token: Optional[Token] = None) -> ExprSyntaxError:
        if token is None:
            end = len(self.source)
            where = (end, end + 1)
        else:
            where = token.where
        return ExprSyntaxError(detail, where, self.source)

    def advance(self, kind: Optional[str] = None, what: Optional[str] = None) -> Token:
        token = self.peek()
        if token is None:
            raise self.error(f"expected {what or kind}, found end of input")
        if kind is not None and token.kind != kind:
            raise self.error(f"expected {what or kind}, found '{token.value}'", token)
        self.pos += 1
        return token

    def accept(self, kind: str) -> Optional[Token]:
        token = self.peek()
        if token is not None and token.kind == kind:
            self.pos += 1
            return token
        return None

    def finish(self) -> None:
        token = self.peek()
        if token is not None:
            raise self.error(f"unexpected '{token.value}'", token)

    # ------------------------------------------------------------- literals

    def rational(self) -> Fraction:
        numerator = int(self.advance("int", "a number").value)
        if self.accept("slash"):
            token = self.advance("int", "a denominator")
            if int(token.value) == 0:
                raise self.error("zero denominator", token)
            return Fraction(numerator, int(token.value))
        return Fraction(numerator)

    def signed(self) -> Fraction:
        sign = -1 if self.accept("minus") else 1
        return sign * self.rational()

    def exponent(self) -> GroupElement:
        start = self.peek()
        if self.accept("lpar"):
            coords = [self.signed()]
            while self.accept("comma"):
                coords.append(self.signed())
            self.advance("rpar", "')'")
        else:
            coords = [self.signed()]
        if len(coords) != self.rank:
            raise RankMismatch(
                f"exponent with {len(coords)} coordinates at rank {self.rank}"
                + (f" (column {start.where[0] + 1})" if start else "")
            )
        return GroupElement(tuple(coords))

    def mono(self) -> GroupElement:
        token = self.advance("name", f"'{VARIABLE}'")
        if token.value != VARIABLE:
            raise self.error(f"expected '{VARIABLE}'", token)
        if self.accept("caret"):
            return self.exponent()
        if self.rank != 1:
            raise RankMismatch(f"bare '{VARIABLE}' needs an explicit exponent at rank {self.rank}")
        return GroupElement.of(1)

    # ----------------------------------------------------------- expressions

    def series(self) -> Series:
        total = self.term()
        while True:
            if self.accept("plus"):
                total = s_add(total, self.term())
            elif self.accept("minus"):
                total = s_add(total, s_neg(self.term()))
            else:
                return total

    def term(self) -> Series:
        negate = bool(self.accept("minus"))
        product = self.factor()
        while self.accept("star"):
            product = s_mul(product, self.factor())
        return s_neg(product) if negate else product

    def factor(self) -> Series:
        token = self.peek()
        if token is None:
            raise self.error("expected a term, found end of input")
        if token.kind == "int":
            return Series.constant(self.rank, self.rational())
        if token.kind == "lpar":
            self.advance()
            inner = self.series()
            self.advance("rpar", "')'")
            return inner
        if token.kind == "name":
            if token.value == VARIABLE:
                return Series.monomial(self.mono())
            if token.value == BIG_O and self._next_is("lpar"):
                return self.big_o()
            self.advance()
            if token.value not in self.bindings:
                raise UnknownName(f"'{token.value}'")
            value = self.bindings[token.value]
            if value.rank != self.rank:
                raise RankMismatch(f"'{token.value}' has rank {value.rank}, session rank is {self.rank}")
            return value
        raise self.error(f"unexpected '{token.value}'", token)

    def big_o(self) -> Series:
        self.advance("name")
        self.advance("lpar", "'('")
        token = self.peek()
        if token is not None and token.kind == "int" and token.value == "1":
            self.advance()
            bound = GroupElement.zero(self.rank)
        else:
            bound = self.mono()
        self.advance("rpar", "')'")
        return Series.zero(self.rank, Cutoff(bound))

    def _next_is(self, kind: str) -> bool:
        token = self.peek(1)
        return token is not None and token.kind == kind

    # ----------------------------------------------------------- structures

    def support_map(self) -> SupportMap:
        self.advance("lbrace", "'{'")
        entries: Dict[int, int] = {}
        if not self.accept("rbrace"):
            while True:
                key = self.advance("int", "an index")
                self.advance("colon", "':'")
                value = self.signed()
                if value.denominator != 1:
                    raise self.error("support map values are integers", key)
                if int(key.value) in entries:
                    raise self.error(f"duplicate index {key.value}", key)
                entries[int(key.value)] = int(value)
                if self.accept("rbrace"):
                    break
                self.advance("comma", "',' or '}'")
        return SupportMap.of(entries)

    def index_set(self) -> FrozenSet[int]:
        self.advance("lbrace", "'{'")
        indices = set()
        if not self.accept("rbrace"):
            while True:
                indices.add(int(self.advance("int", "an index").value))
                if self.accept("rbrace"):
                    break
                self.advance("comma", "',' or '}'")
        return frozenset(indices)


# ============================================================================
# PUBLIC FUNCTIONS
# ============================================================================

def parse_expr(text: str, rank: int, bindings: Optional[Mapping[str, Series]] = None) -> Series:
    """
    Parse a series expression.

    Args:
        text: Expression source
        rank: Session rank
        bindings: Named series usable as factors

    Returns:
        The Series (exact unless an O(...) term occurs)

    Raises:
        ExprSyntaxError: Malformed input, with the offending position
        RankMismatch: Exponent arity differs from ``rank``
        UnknownName: Unbound identifier
    """
    parser = Parser(text, rank, bindings)
    if not parser.tokens:
        raise parser.error("empty expression")
    result = parser.series()
    parser.finish()
    return result


def parse_exponent(text: str, rank: int) -> GroupElement:
    """Parse ``q`` or ``(q1, ..., qr)``."""
    parser = Parser(text, rank)
    result = parser.exponent()
    parser.finish()
    return result


def parse_cutoff(text: str, rank: int) -> Cutoff:
    """
    Parse a cutoff: ``exact``, an exponent literal, or a monomial ``t^e``.
    """
    stripped = text.strip()
    if stripped in ("exact", "inf"):
        return EXACT
    parser = Parser(stripped, rank)
    token = parser.peek()
    if token is not None and token.kind == "name":
        bound = parser.mono()
    else:
        bound = parser.exponent()
    parser.finish()
    return Cutoff(bound)


def parse_support_map(text: str) -> SupportMap:
    """Parse ``{i:v, i:v}``."""
    parser = Parser(text, 1)
    result = parser.support_map()
    parser.finish()
    return result


def parse_index_set(text: str) -> FrozenSet[int]:
    """Parse ``{i, j, ...}``."""
    parser = Parser(text, 1)
    result = parser.index_set()
    parser.finish()
    return result
