"""A minimal reader/writer for the ground Prolog-style terms used by the
training files, valence-pattern dumps and fact output.

Supported syntax: bare and quoted atoms, integers, floats, lists, compound
terms, and the infix ``=`` and ``+`` used inside training annotations.
Parsed terms map to Python as: atom -> str, number -> int/float,
list -> list, compound -> Term(functor, args).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .model import FactlogError

_BARE_ATOM = re.compile(r"^[a-z][a-zA-Z0-9_]*$")


class TermError(FactlogError):
    pass


@dataclass(frozen=True)
class Term:
    functor: str
    args: tuple

    def __str__(self):
        if not self.args:
            return atom(self.functor)
        return f"{atom(self.functor)}({','.join(render(a) for a in self.args)})"


def atom(text: str) -> str:
    """Render text as an atom, quoting unless it is a bare lowercase word."""
    if _BARE_ATOM.match(text):
        return text
    return quoted(text)


def quoted(text: str) -> str:
    escaped = text.replace("\\", "\\\\").replace("'", "\\'")
    return f"'{escaped}'"


def render(value) -> str:
    if isinstance(value, Term):
        return str(value)
    if isinstance(value, str):
        return atom(value)
    if isinstance(value, bool):
        raise TermError("booleans have no term syntax")
    if isinstance(value, (int, float)):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return f"[{','.join(render(v) for v in value)}]"
    raise TermError(f"cannot render {value!r} as a term")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, char: str):
        self.skip_ws()
        if self.peek() != char:
            raise TermError(
                f"expected {char!r} at position {self.pos} in {self.text!r}")
        self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)


def parse_term(text: str):
    """Parse one term; a trailing period is allowed."""
    scanner = _Scanner(text)
    value = _parse(scanner)
    if scanner.peek() == ".":
        scanner.pos += 1
    if not scanner.at_end():
        raise TermError(f"trailing input at position {scanner.pos} "
                        f"in {text!r}")
    return value


def _parse(scanner: _Scanner):
    value = _parse_sum(scanner)
    if scanner.peek() == "=":
        scanner.pos += 1
        value = Term("=", (value, _parse_sum(scanner)))
    return value


def _parse_sum(scanner: _Scanner):
    value = _parse_primary(scanner)
    while scanner.peek() == "+":
        scanner.pos += 1
        value = Term("+", (value, _parse_primary(scanner)))
    return value


def _parse_primary(scanner: _Scanner):
    ch = scanner.peek()
    if ch == "[":
        return _parse_list(scanner)
    if ch == "'":
        return _parse_quoted(scanner)
    if ch.isdigit() or ch == "-":
        return _parse_number(scanner)
    if ch.isalpha() or ch == "_":
        name = _parse_name(scanner)
        if scanner.peek() == "(":
            scanner.take("(")
            args = []
            if scanner.peek() != ")":
                args.append(_parse(scanner))
                while scanner.peek() == ",":
                    scanner.take(",")
                    args.append(_parse(scanner))
            scanner.take(")")
            return Term(name, tuple(args))
        return name
    raise TermError(f"unexpected character {ch!r} at position {scanner.pos} "
                    f"in {scanner.text!r}")


def _parse_list(scanner: _Scanner) -> list:
    scanner.take("[")
    items = []
    if scanner.peek() != "]":
        items.append(_parse(scanner))
        while scanner.peek() == ",":
            scanner.take(",")
            items.append(_parse(scanner))
    scanner.take("]")
    return items


def _parse_quoted(scanner: _Scanner) -> str:
    scanner.take("'")
    out = []
    text = scanner.text
    while scanner.pos < len(text):
        ch = text[scanner.pos]
        if ch == "\\" and scanner.pos + 1 < len(text):
            out.append(text[scanner.pos + 1])
            scanner.pos += 2
            continue
        if ch == "'":
            scanner.pos += 1
            return "".join(out)
        out.append(ch)
        scanner.pos += 1
    raise TermError(f"unterminated quoted atom in {scanner.text!r}")


def _parse_number(scanner: _Scanner):
    scanner.skip_ws()
    match = re.match(r"-?\d+(\.\d+)?", scanner.text[scanner.pos:])
    if not match:
        raise TermError(f"bad number at position {scanner.pos}")
    scanner.pos += match.end()
    literal = match.group(0)
    return float(literal) if "." in literal else int(literal)


def _parse_name(scanner: _Scanner) -> str:
    scanner.skip_ws()
    match = re.match(r"[A-Za-z_][A-Za-z0-9_]*", scanner.text[scanner.pos:])
    if not match:
        raise TermError(f"bad name at position {scanner.pos}")
    scanner.pos += match.end()
    return match.group(0)


def iter_terms(text: str):
    """Yield parsed terms from text, one per nonempty non-comment line."""
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("%"):
            continue
        try:
            yield parse_term(stripped)
        except TermError as exc:
            raise TermError(f"line {lineno}: {exc}") from exc
