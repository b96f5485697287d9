"""Text syntax for group words.

Grammar (whitespace or ``*`` multiplies)::

    expr     := term (['*'] term)*
    term     := atom ('^' exponent)*
    exponent := ['-'] INT | ['-'] atom        # g^-h means (g^-1)^h
    atom     := NAME | '1' | '(' expr ')' | '[' expr (',' expr)+ ']'

Commutators are left-normed, ``[a,b] = a^-1 b^-1 a b`` and ``a^b = b^-1 a b``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Protocol

from .core.words import Word, commutator, conjugate, free_reduce, inverse, multiply, power


class WordSyntaxError(ValueError):
    """Malformed word or unknown generator."""


class Alphabet(Protocol):
    names: tuple[str, ...]
    involutive: bool

    def index(self, name: str) -> int: ...


@dataclass(frozen=True)
class FreeAlphabet:
    """Generator names of a free group (or a free product of involutions)."""

    names: tuple[str, ...]
    involutive: bool = False
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(self.names)})

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise WordSyntaxError(f"unknown generator {name!r}") from None


_TOKEN = re.compile(r"\s*(?:([A-Za-z][A-Za-z0-9_]*)|(\d+)|(\S))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        name, num, punct = m.groups()
        if name is not None:
            tokens.append(("name", name))
        elif num is not None:
            tokens.append(("int", num))
        else:
            tokens.append(("punct", punct))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.alphabet = alphabet
        self.inv = alphabet.involutive

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise WordSyntaxError(f"expected {value or 'token'} in {self.text!r}")
        self.pos += 1
        return tok

    def starts_atom(self) -> bool:
        kind, val = self.peek()
        return kind == "name" or (kind == "int" and val == "1") or val in ("(", "[")

    def expr(self) -> Word:
        word = self.term()
        while True:
            if self.peek() == ("punct", "*"):
                self.take()
                word = multiply(word, self.term(), involutive=self.inv)
            elif self.starts_atom():
                word = multiply(word, self.term(), involutive=self.inv)
            else:
                return word

    def term(self) -> Word:
        word = self.atom()
        while self.peek() == ("punct", "^"):
            self.take()
            negate = False
            if self.peek() == ("punct", "-"):
                self.take()
                negate = True
            kind, val = self.peek()
            if kind == "int":
                # an integer after '^' is always an exponent
                self.take()
                e = int(val)
                word = power(word, -e if negate else e, self.inv)
            else:
                conj = self.atom()
                if negate:
                    word = inverse(word, self.inv)
                word = conjugate(word, conj, self.inv)
        return word

    def atom(self) -> Word:
        kind, val = self.peek()
        if kind == "name":
            self.take()
            try:
                return free_reduce([(self.alphabet.index(val), 1)], self.inv)
            except ValueError as exc:
                raise WordSyntaxError(str(exc)) from None
        if kind == "int" and val == "1":
            self.take()
            return ()
        if val == "(":
            self.take()
            word = self.expr()
            self.take(")")
            return word
        if val == "[":
            self.take()
            word = self.expr()
            count = 0
            while self.peek() == ("punct", ","):
                self.take()
                word = commutator(word, self.expr(), self.inv)
                count += 1
            if count == 0:
                raise WordSyntaxError(f"commutator needs two entries in {self.text!r}")
            self.take("]")
            return word
        raise WordSyntaxError(f"unexpected {val!r} in {self.text!r}")


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Parse ``text`` into a reduced word over ``alphabet``."""
    parser = _Parser(text, alphabet)
    if not parser.tokens:
        raise WordSyntaxError("empty word text (write 1 for the identity)")
    word = parser.expr()
    if parser.pos != len(parser.tokens):
        raise WordSyntaxError(f"trailing input in {text!r}")
    return word


def format_word(g: Word, alphabet: Alphabet) -> str:
    if not g:
        return "1"
    parts = []
    for index, sign in g:
        name = alphabet.names[index]
        parts.append(name if sign > 0 or alphabet.involutive else name + "^-1")
    return " ".join(parts)
