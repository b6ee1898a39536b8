"""Concrete syntax for processes and ``.bccsp`` process files.

Grammar::

    sum    := prefix ("+" prefix)*
    prefix := "0" | "(" sum ")" | ACTION "." prefix | ACTION "(" sum ")"
            | ACTION prefix | ACTION
    file   := alphabet-block? (NAME "=" sum)*

A bare action means the action followed by ``0``.  When an alphabet is given,
an undeclared identifier made only of declared one-letter actions (optionally
ending in ``0``) is read as juxtaposed prefixes, so ``ab+ac`` is
``a.b.0 + a.c.0``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .terms import Alphabet, Nil, Prefix, Sum, Term, canonicalize

__all__ = [
    "ParseError",
    "UndeclaredActionError",
    "ProcessFile",
    "parse",
    "parse_raw",
    "parse_alphabet",
    "parse_file",
    "load_file",
    "format_term",
]


class ParseError(ValueError):
    def __init__(self, message: str, position: int | None = None, line: int | None = None):
        self.position = position
        self.line = line
        where = ""
        if line is not None:
            where = f"line {line}: "
        if position is not None:
            where += f"column {position + 1}: "
        super().__init__(where + message)


class UndeclaredActionError(ParseError):
    def __init__(self, name: str, position: int | None = None):
        self.name = name
        super().__init__(f"undeclared action {name!r}", position)


_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<zero>0)|(?P<op>[.+()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            stripped = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[stripped]!r}", stripped)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet | None):
        self.toks = _tokenize(text)
        self.i = 0
        self.alphabet = alphabet

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.take()
        if val != value:
            raise ParseError(f"expected {value!r}, found {val or 'end of input'!r}", pos)

    def parse(self):
        node = self.sum()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)
        return node

    def sum(self):
        node = self.prefix()
        while self.peek()[1] == "+":
            self.take()
            node = Sum(node, self.prefix())
        return node

    def prefix(self):
        kind, val, pos = self.take()
        if kind == "zero":
            return Nil()
        if val == "(":
            node = self.sum()
            self.expect(")")
            return node
        if kind == "ident":
            actions, trailing_zero = self.resolve(val, pos)
            if trailing_zero:
                body = Nil()
            else:
                body = self.continuation()
            for a in reversed(actions):
                body = Prefix(a, body)
            return body
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)

    def continuation(self):
        kind, val, pos = self.peek()
        if val == ".":
            self.take()
            return self.prefix()
        if val == "(" or kind in ("ident", "zero"):
            return self.prefix()
        return Nil()

    def resolve(self, name: str, pos: int) -> tuple[list[str], bool]:
        alpha = self.alphabet
        if alpha is None or alpha.declares(name):
            return [name], False
        letters, zero = name, False
        if letters.endswith("0"):
            letters, zero = letters[:-1], True
        if letters and all(alpha.declares(ch) for ch in letters):
            return list(letters), zero
        if alpha.declares(letters) and zero:
            return [letters], True
        raise UndeclaredActionError(name, pos)


def parse_raw(text: str, alphabet: Alphabet | None = None):
    return _Parser(text, alphabet).parse()


def parse(text: str, alphabet: Alphabet | None = None) -> Term:
    """Parse ``text`` to a canonical term; actions must be declared in
    ``alphabet`` when one is given."""
    return canonicalize(parse_raw(text, alphabet))


def format_term(t: Term) -> str:
    if not t.summands:
        return "0"
    return " + ".join(_format_summand(a, c) for a, c in t.summands)


def _format_summand(a: str, c: Term) -> str:
    if len(c.summands) > 1:
        return f"{a}.({format_term(c)})"
    return f"{a}.{format_term(c)}"


_CLASS_TAGS = {"r": "r", "l": "l", "bi": "bi", "fresh": "fresh"}


def parse_alphabet(body: str) -> Alphabet:
    """Parse the inside of an ``alphabet { ... }`` block."""
    groups: dict[str, list[str]] = {"r": [], "l": [], "bi": [], "fresh": []}
    for chunk in body.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if ":" not in chunk:
            raise ParseError(f"alphabet class needs 'tag: names', got {chunk!r}")
        tag, names = chunk.split(":", 1)
        tag = tag.strip()
        if tag not in _CLASS_TAGS:
            raise ParseError(f"unknown alphabet class {tag!r}")
        for n in names.split(","):
            n = n.strip()
            if not n:
                continue
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", n):
                raise ParseError(f"bad action name {n!r}")
            groups[tag].append(n)
    try:
        return Alphabet.of(groups["r"], groups["l"], groups["bi"], groups["fresh"])
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


@dataclass
class ProcessFile:
    alphabet: Alphabet
    definitions: dict[str, Term] = field(default_factory=dict)

    def __getitem__(self, name: str) -> Term:
        try:
            return self.definitions[name]
        except KeyError:
            raise KeyError(f"no process named {name!r}") from None

    def render(self) -> str:
        lines = [f"alphabet {{ {self.alphabet.describe()} }}"]
        lines += [f"{name} = {format_term(t)}" for name, t in self.definitions.items()]
        return "\n".join(lines) + "\n"


_ALPHA_BLOCK = re.compile(r"alphabet\s*\{(?P<body>[^}]*)\}", re.S)
_DEF = re.compile(r"(?P<name>[A-Za-z_][A-Za-z0-9_]*)\s*=(?P<body>.*)")


def parse_file(text: str) -> ProcessFile:
    lines = [ln.split("#", 1)[0] for ln in text.splitlines()]
    stripped = "\n".join(lines)
    alphabet = Alphabet()
    m = _ALPHA_BLOCK.search(stripped)
    if m:
        alphabet = parse_alphabet(m.group("body"))
        before = stripped[: m.start()]
        if before.strip():
            raise ParseError("definitions must follow the alphabet block", line=1)
        start_line = stripped[: m.end()].count("\n")
        rest = stripped[m.end():].split("\n")
        rest[0] = rest[0].strip()
    else:
        start_line = 0
        rest = stripped.split("\n")
    pf = ProcessFile(alphabet)
    for offset, ln in enumerate(rest):
        lineno = start_line + offset + 1
        if not ln.strip():
            continue
        d = _DEF.fullmatch(ln.strip())
        if d is None:
            raise ParseError(f"expected 'NAME = term', got {ln.strip()!r}", line=lineno)
        name = d.group("name")
        if name in pf.definitions:
            raise ParseError(f"process {name!r} defined twice", line=lineno)
        try:
            pf.definitions[name] = parse(d.group("body"), alphabet)
        except ParseError as exc:
            exc.line = lineno
            exc.args = (f"line {lineno}: {exc.args[0]}",)
            raise
    return pf


def load_file(path: str | Path) -> ProcessFile:
    return parse_file(Path(path).read_text(encoding="utf-8"))

