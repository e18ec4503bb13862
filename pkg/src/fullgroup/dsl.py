"""A small expression language for elements and clopen sets.

Elements::

    elem   := factor (['*'] factor)*
    factor := atom ('^' int)*
    atom   := 'phi' | 'id' | NAME | '(' elem ')' | '[' elem ',' elem ']'
            | ('gammaU' | 'tauU' | 'sigmaU' | 'phiU') '(' set ')'

``[a,b]`` is ``a^-1 b^-1 a b`` and juxtaposition means composition, the
right factor acting first.

Clopen sets::

    set    := inter (('|' | '-') inter)*
    inter  := unary ('&' unary)*
    unary  := '~' unary | 'X' | 'empty' | CYLINDER | NAME | '(' set ')'
            | 'shift' '(' int ',' set ')'

``shift(k, A)`` is ``phi^k(A)``; cylinders use dot notation such as
``[01^2.0]``.

Identity files hold one statement per line; ``#`` starts a comment::

    set U = [0.]
    let s = sigmaU(U)
    involution: s^2 = id
    s s = id                      # unnamed, reported as line N
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .element import FullGroupElement, commutator, identity, power, shift
from .errors import FullGroupError, ParseError
from .generators import gamma_u, phi_u, sigma_u, tau_u
from .report import ERROR, Check, Report, check_equal
from .subshift import ClopenSet, SubshiftSystem, parse_cylinder

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT = re.compile(r"[+-]?\d+")
_BUILDERS = {"gammaU": gamma_u, "tauU": tau_u, "sigmaU": sigma_u, "phiU": phi_u}
_RESERVED = {"phi", "id", "X", "empty", "shift", "let", "set"} | set(_BUILDERS)


@dataclass
class Environment:
    system: SubshiftSystem
    elements: dict[str, FullGroupElement] = field(default_factory=dict)
    sets: dict[str, ClopenSet] = field(default_factory=dict)


class _Parser:
    def __init__(self, text: str, env: Environment, base: int = 0):
        self.text = text
        self.env = env
        self.pos = 0
        self.base = base

    # -- lexing helpers ----------------------------------------------------
    def error(self, msg: str, pos: Optional[int] = None) -> ParseError:
        return ParseError(msg, self.base + (self.pos if pos is None else pos), self.text)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def accept(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch: str) -> None:
        if not self.accept(ch):
            got = self.peek() or "end of input"
            raise self.error(f"expected {ch!r}, found {got!r}")

    def name(self) -> Optional[str]:
        self.skip()
        m = _NAME.match(self.text, self.pos)
        if not m:
            return None
        self.pos = m.end()
        return m.group()

    def integer(self) -> int:
        self.skip()
        m = _INT.match(self.text, self.pos)
        if not m:
            raise self.error("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def done(self) -> None:
        if self.peek():
            raise self.error(f"unexpected {self.peek()!r}")

    # -- elements ------------------------------------------------------------
    def element(self) -> FullGroupElement:
        g = self.factor()
        while True:
            self.accept("*")
            ch = self.peek()
            if not ch or ch in "),=]":
                return g
            g = g * self.factor()

    def factor(self) -> FullGroupElement:
        g = self.atom()
        while self.accept("^"):
            g = power(g, self.integer())
        return g

    def atom(self) -> FullGroupElement:
        start = self.pos
        if self.accept("("):
            g = self.element()
            self.expect(")")
            return g
        if self.accept("["):
            a = self.element()
            self.expect(",")
            b = self.element()
            self.expect("]")
            return commutator(a, b)
        nm = self.name()
        if nm is None:
            self.skip()
            raise self.error("expected an element")
        if nm == "phi":
            return shift(self.env.system)
        if nm == "id":
            return identity(self.env.system)
        if nm in _BUILDERS:
            self.expect("(")
            A = self.clopen()
            self.expect(")")
            return _BUILDERS[nm](A)
        if nm in self.env.elements:
            return self.env.elements[nm]
        raise self.error(f"unknown element {nm!r}", start)

    # -- clopen sets ---------------------------------------------------------
    def clopen(self) -> ClopenSet:
        A = self.inter()
        while True:
            if self.accept("|"):
                A = A | self.inter()
            elif self.accept("-"):
                A = A - self.inter()
            else:
                return A

    def inter(self) -> ClopenSet:
        A = self.unary()
        while self.accept("&"):
            A = A & self.unary()
        return A

    def unary(self) -> ClopenSet:
        if self.accept("~"):
            return self.unary().complement()
        if self.accept("("):
            A = self.clopen()
            self.expect(")")
            return A
        if self.peek() == "[":
            return self.cylinder()
        start = self.pos
        nm = self.name()
        if nm is None:
            raise self.error("expected a clopen set")
        sys = self.env.system
        if nm == "X":
            return sys.full()
        if nm == "empty":
            return sys.empty()
        if nm == "shift":
            self.expect("(")
            k = self.integer()
            self.expect(",")
            A = self.clopen()
            self.expect(")")
            return A.shift(k)
        if nm in self.env.sets:
            return self.env.sets[nm]
        raise self.error(f"unknown set {nm!r}", start)

    def cylinder(self) -> ClopenSet:
        start = self.pos
        close = self.text.find("]", start)
        if close < 0:
            raise self.error("unterminated cylinder", start)
        raw = self.text[start:close + 1]
        self.pos = close + 1
        try:
            return parse_cylinder(self.env.system, raw)
        except ParseError as exc:
            raise ParseError(str(exc).rsplit(" at position", 1)[0],
                             self.base + start + exc.position, self.text) from exc


def parse_element(text: str, env: Environment | SubshiftSystem) -> FullGroupElement:
    env = env if isinstance(env, Environment) else Environment(env)
    p = _Parser(text, env)
    g = p.element()
    p.done()
    return g


def parse_clopen(text: str, env: Environment | SubshiftSystem) -> ClopenSet:
    env = env if isinstance(env, Environment) else Environment(env)
    p = _Parser(text, env)
    A = p.clopen()
    p.done()
    return A


def _split_top(text: str, sep: str) -> int:
    """Index of the first ``sep`` outside brackets, or -1."""
    depth = 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            return i
    return -1


def run_identities(text: str, env: Environment | SubshiftSystem, title: str = "identities") -> Report:
    """Evaluate an identity file.  Parse and evaluation errors become ``error`` checks."""
    env = env if isinstance(env, Environment) else Environment(env)
    rep = Report(title)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        label = f"line {lineno}"
        try:
            head = line.lstrip()
            kw = _NAME.match(head)
            if kw and kw.group() in ("let", "set") and head[kw.end():kw.end() + 1].isspace():
                rest = head[kw.end():]
                eq = rest.find("=")
                if eq < 0:
                    raise ParseError(f"{kw.group()} needs '='", len(line) - len(head) + kw.end(), line)
                nm = rest[:eq].strip()
                if not _NAME.fullmatch(nm) or nm in _RESERVED:
                    raise ParseError(f"bad name {nm!r}", len(line) - len(head) + kw.end(), line)
                base = len(line) - len(rest) + eq + 1
                p = _Parser(rest[eq + 1:], env, base)
                if kw.group() == "let":
                    env.elements[nm] = p.element()
                else:
                    env.sets[nm] = p.clopen()
                p.done()
                continue
            colon = _split_top(line, ":")
            body_at = 0
            if colon >= 0:
                label = line[:colon].strip() or label
                body_at = colon + 1
            body = line[body_at:]
            eq = _split_top(body, "=")
            if eq < 0:
                raise ParseError("an identity needs '='", body_at, line)
            lp = _Parser(body[:eq], env, body_at)
            lhs = lp.element()
            lp.done()
            rp = _Parser(body[eq + 1:], env, body_at + eq + 1)
            rhs = rp.element()
            rp.done()
            rep.add(check_equal(label, f"line {lineno}", lhs, rhs))
        except FullGroupError as exc:
            rep.add(Check(label, f"line {lineno}", ERROR, witness=getattr(exc, "code", "error"),
                          detail=str(exc)))
    return rep
