"""Shared tokenizer for every text format (categories, sketches, models, signatures, algebras)."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ParseError

PUNCT = ("|->", "->", "=>", "{", "}", "(", ")", "[", "]", ",", ";", ":", "=", ".", "@")

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<punct>\|->|->|=>|[{}()\[\],;:=.@])
  | (?P<ident>[A-Za-z0-9_][A-Za-z0-9_'/]*(?:-[A-Za-z0-9_'/]+)*)
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "string", "punct", "eof"
    text: str
    line: int
    col: int

    @property
    def value(self) -> str:
        if self.kind == "string":
            return re.sub(r"\\(.)", r"\1", self.text[1:-1])
        return self.text


def tokenize(text: str, source: str = "<input>") -> list[Token]:
    out: list[Token] = []
    pos, line, start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1, source)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            start = m.end()
        elif kind in ("string", "punct", "ident"):
            out.append(Token(kind, m.group(), line, pos - start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - start + 1))
    return out


class TokenStream:
    def __init__(self, text: str, source: str = "<input>"):
        self.source = source
        self.tokens = tokenize(text, source)
        self.i = 0

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.i + ahead, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.peek()
        self.i = min(self.i + 1, len(self.tokens) - 1)
        return tok

    def at(self, text: str, ahead: int = 0) -> bool:
        tok = self.peek(ahead)
        return tok.kind in ("punct", "ident") and tok.text == text

    def at_eof(self) -> bool:
        return self.peek().kind == "eof"

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(message, tok.line, tok.col, self.source)

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if not self.at(text):
            found = tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.next()

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.next()
            return True
        return False

    def name(self, what: str = "a name") -> str:
        tok = self.peek()
        if tok.kind not in ("ident", "string"):
            raise self.error(f"expected {what}, found {tok.text or 'end of input'!r}")
        self.next()
        return tok.value


__all__ = ["PUNCT", "Token", "TokenStream", "tokenize"]
