"""Tokenizer for the SyGuS surface syntax.

Whole-input tokenization: whitespace separates tokens, ``;`` starts a
comment running to the end of the line, and positions are 1-based.
Only ``\\n`` terminates a line; ``\\r`` counts as plain whitespace and a
tab advances the column by one.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from enum import Enum, auto
from fractions import Fraction
from typing import Union

#: Keywords that may never be used as identifiers.
RESERVED_WORDS = frozenset(
    {
        "set-logic",
        "define-sort",
        "declare-var",
        "declare-fun",
        "define-fun",
        "synth-fun",
        "constraint",
        "check-synth",
        "set-options",
        "BitVec",
        "Array",
        "Int",
        "Bool",
        "Enum",
        "Real",
        "Constant",
        "Variable",
        "InputVariable",
        "LocalVariable",
        "let",
        "true",
        "false",
    }
)

_SPECIAL = set("_+-*&|!~<>=/%?.$^")
_SYMBOL_START = set(string.ascii_letters) | _SPECIAL
_SYMBOL_CONT = _SYMBOL_START | set(string.digits)
_QUOTED_CHARS = set(string.ascii_letters) | set(string.digits) | {"."}
_HEX_DIGITS = set(string.hexdigits)


class TokKind(Enum):
    LPAREN = auto()
    RPAREN = auto()
    SYMBOL = auto()
    INT = auto()
    REAL = auto()
    BOOL = auto()
    BV = auto()
    QUOTED = auto()
    ENUM = auto()


TokValue = Union[None, str, int, bool, Fraction, tuple]


@dataclass(frozen=True)
class Token:
    kind: TokKind
    value: TokValue
    line: int
    col: int


class LexError(Exception):
    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col
        self.message = message


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.i = 0
        self.line = 1
        self.col = 1

    def peek(self, ahead: int = 0) -> str:
        j = self.i + ahead
        return self.text[j] if j < len(self.text) else ""

    def advance(self) -> str:
        c = self.text[self.i]
        self.i += 1
        if c == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        return c

    def error(self, message: str, line: int | None = None, col: int | None = None):
        raise LexError(self.line if line is None else line,
                       self.col if col is None else col, message)


def tokenize(text: str) -> list[Token]:
    """Tokenize ``text``, raising ``LexError`` on any malformed input."""
    s = _Scanner(text)
    out: list[Token] = []
    while s.i < len(s.text):
        c = s.peek()
        if c in " \t\r\n":
            s.advance()
        elif c == ";":
            while s.i < len(s.text) and s.peek() != "\n":
                s.advance()
        elif c == "(":
            out.append(Token(TokKind.LPAREN, None, s.line, s.col))
            s.advance()
        elif c == ")":
            out.append(Token(TokKind.RPAREN, None, s.line, s.col))
            s.advance()
        elif c == '"':
            out.append(_scan_quoted(s))
        elif c == "#":
            out.append(_scan_bv(s))
        elif c.isdigit():
            out.append(_scan_number(s, negative=False))
        elif c == "-" and s.peek(1).isdigit():
            # Literal priority: a minus immediately followed by a digit
            # starts a numeric constant, not a symbol.
            out.append(_scan_number(s, negative=True))
        elif c in _SYMBOL_START:
            out.append(_scan_symbol(s))
        else:
            s.error(f"character {c!r} cannot start a token")
    return out


def _scan_quoted(s: _Scanner) -> Token:
    line, col = s.line, s.col
    s.advance()  # opening quote
    chars: list[str] = []
    while True:
        if s.i >= len(s.text):
            s.error("unterminated quoted literal", line, col)
        c = s.peek()
        if c == '"':
            s.advance()
            break
        if c not in _QUOTED_CHARS:
            s.error(f"character {c!r} not allowed in a quoted literal")
        chars.append(s.advance())
    if not chars:
        s.error("quoted literal must not be empty", line, col)
    return Token(TokKind.QUOTED, "".join(chars), line, col)


def _scan_bv(s: _Scanner) -> Token:
    line, col = s.line, s.col
    s.advance()  # '#'
    base = s.peek()
    if base not in ("b", "x"):
        s.error("expected 'b' or 'x' after '#'", line, col)
    s.advance()
    digits: list[str] = []
    while s.i < len(s.text) and s.peek() in _HEX_DIGITS:
        digits.append(s.advance())
    if not digits:
        s.error("expected digits after bit-vector prefix", line, col)
    text = "".join(digits)
    if base == "b":
        if any(d not in "01" for d in text):
            s.error(f"invalid binary digit in '#b{text}'", line, col)
        return Token(TokKind.BV, (len(text), int(text, 2)), line, col)
    return Token(TokKind.BV, (4 * len(text), int(text, 16)), line, col)


def _scan_number(s: _Scanner, negative: bool) -> Token:
    line, col = s.line, s.col
    if negative:
        s.advance()  # '-'
    int_digits: list[str] = []
    while s.i < len(s.text) and s.peek().isdigit():
        int_digits.append(s.advance())
    if s.peek() != ".":
        value = int("".join(int_digits))
        return Token(TokKind.INT, -value if negative else value, line, col)
    s.advance()  # '.'
    frac_digits: list[str] = []
    while s.i < len(s.text) and s.peek().isdigit():
        frac_digits.append(s.advance())
    if not frac_digits:
        s.error("expected digits after decimal point", line, col)
    num = int("".join(int_digits + frac_digits))
    value = Fraction(num, 10 ** len(frac_digits))
    return Token(TokKind.REAL, -value if negative else value, line, col)


def _scan_symbol(s: _Scanner) -> Token:
    line, col = s.line, s.col
    chars: list[str] = []
    while s.i < len(s.text) and s.peek() in _SYMBOL_CONT:
        chars.append(s.advance())
    text = "".join(chars)
    if s.peek() == ":" and s.peek(1) == ":":
        s.advance()
        s.advance()
        if not (s.i < len(s.text) and s.peek() in _SYMBOL_START):
            s.error("expected constructor name after '::'")
        ctor_chars: list[str] = []
        while s.i < len(s.text) and s.peek() in _SYMBOL_CONT:
            ctor_chars.append(s.advance())
        return Token(TokKind.ENUM, (text, "".join(ctor_chars)), line, col)
    if text == "true":
        return Token(TokKind.BOOL, True, line, col)
    if text == "false":
        return Token(TokKind.BOOL, False, line, col)
    return Token(TokKind.SYMBOL, text, line, col)
