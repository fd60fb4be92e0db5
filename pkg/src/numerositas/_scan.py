"""Tiny tokenizer and cursor shared by the set, ordinal and value parsers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError

PUNCT = ("<+>", "<*>", "(", ")", "[", "]", "{", "}", ",", "/", "+", "-", "*", "^")


@dataclass(frozen=True)
class Token:
    kind: str  # "name", "int", "punct", "end"
    text: str
    pos: int  # 1-based


def tokenize(text: str) -> list[Token]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isascii() and ch.isdigit():
            j = i
            while j < len(text) and text[j].isascii() and text[j].isdigit():
                j += 1
            tokens.append(Token("int", text[i:j], i + 1))
            i = j
            continue
        if ch.isascii() and (ch.isalpha() or ch == "_"):
            j = i
            while j < len(text) and text[j].isascii() and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("name", text[i:j], i + 1))
            i = j
            continue
        for p in PUNCT:
            if text.startswith(p, i):
                tokens.append(Token("punct", p, i + 1))
                i += len(p)
                break
        else:
            raise ParseError(f"unexpected character {ch!r}", i + 1, ("a valid token",))
    tokens.append(Token("end", "", len(text) + 1))
    return tokens


class Cursor:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def at(self, *texts: str) -> bool:
        t = self.tok
        return t.kind in ("punct", "name") and t.text in texts

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "end":
            self.i += 1
        return t

    def fail(self, expected, message: str | None = None):
        t = self.tok
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(message or f"unexpected {found}", t.pos, expected)

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail({repr(text)})
        return self.advance()

    def integer(self, signed: bool = True) -> int:
        neg = False
        if signed and self.at("-"):
            self.advance()
            neg = True
        if self.tok.kind != "int":
            self.fail({"integer"})
        v = int(self.advance().text)
        return -v if neg else v

    def rational(self) -> Fraction:
        num = self.integer()
        if self.at("/"):
            self.advance()
            pos = self.tok.pos
            den = self.integer(signed=False)
            if den == 0:
                raise ParseError("zero denominator", pos, {"positive integer"})
            return Fraction(num, den)
        return Fraction(num)

    def finish(self):
        if self.tok.kind != "end":
            self.fail({"end of input"})
