"""Surface syntax: algebra expressions and complex-vector serializations.

Element grammar: vertex idempotents ``e(v)``, arrows ``a``, ghost arrows
``a*``, integer or ``num/den`` scalars, ``+``/``-``, explicit product ``.``
and parentheses; a scalar may prefix a factor by juxtaposition (``2/3 e(1)``).
Digit-only tokens always read as scalars.

Vector grammar: signed sums of ``coeff * E(v) zeta(p ; q)`` or
``coeff * G(a) zeta(p ; q)``; paths are ``.``-joined arrow ids written
last-traversed first, trivial paths are ``e(v)``.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .algebra import (AdmissiblePair, LPAElement, idempotent, arrow_element,
                      ghost_element, mul, pair_key, unit)
from .complex import BasisVector, ChainVector, Socle, basis_key, make_basis_vector
from .quiver import Path, Quiver
from .scalars import RATIONALS


class ExprError(ValueError):
    """Syntax or name error in an expression or vector spec."""


_TOKEN = re.compile(r"\s*(?:([A-Za-z0-9_]+)|([().+\-*/;])|(\S))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    """Tokens: ("name"|"number"|"sym", value, position)."""
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        word, sym, bad = m.groups()
        if bad:
            raise ExprError(f"unexpected character {bad!r} at position {m.start(3)}")
        if word is not None:
            kind = "number" if word.isdigit() else "name"
            out.append((kind, word, m.start(1)))
        else:
            out.append(("sym", sym, m.start(2)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, quiver: Quiver, field=RATIONALS):
        self.tokens = tokenize(text)
        self.i = 0
        self.quiver = quiver
        self.field = field

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", "", -1)

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_sym(self, sym):
        kind, val, pos = self.next()
        if kind != "sym" or val != sym:
            raise ExprError(f"expected {sym!r}, got {val!r} at position {pos}")

    def at_sym(self, sym):
        kind, val, _ = self.peek()
        return kind == "sym" and val == sym

    def done(self):
        if self.i != len(self.tokens):
            _, val, pos = self.peek()
            raise ExprError(f"trailing input {val!r} at position {pos}")

    # -- scalars and paths ------------------------------------------

    def scalar(self):
        kind, val, pos = self.next()
        if kind != "number":
            raise ExprError(f"expected a number at position {pos}")
        num = int(val)
        if self.at_sym("/"):
            self.next()
            kind, dval, dpos = self.next()
            if kind != "number":
                raise ExprError(f"expected a denominator at position {dpos}")
            return self.field.from_fraction(num, int(dval))
        return self.field.from_int(num)

    def path(self) -> Path:
        kind, val, pos = self.peek()
        if kind == "name" and val == "e":
            nxt = self.tokens[self.i + 1] if self.i + 1 < len(self.tokens) else None
            if nxt and nxt[0] == "sym" and nxt[1] == "(":
                self.next()
                self.expect_sym("(")
                _, v, vpos = self.next()
                if v not in self.quiver.special:
                    raise ExprError(f"unknown vertex {v!r} at position {vpos}")
                self.expect_sym(")")
                return self.quiver.trivial_path(v)
        names = [self._arrow_name()]
        while self.at_sym("."):
            self.next()
            names.append(self._arrow_name())
        try:
            return self.quiver.path(tuple(reversed(names)))
        except Exception as exc:
            raise ExprError(str(exc)) from exc

    def _arrow_name(self) -> str:
        kind, val, pos = self.next()
        if kind not in ("name", "number"):
            raise ExprError(f"expected an arrow id at position {pos}")
        if val not in self.quiver.arrows:
            raise ExprError(f"unknown arrow {val!r} at position {pos}")
        return val

    # -- element grammar ---------------------------------------------

    def element(self) -> LPAElement:
        total = LPAElement.zero()
        negative = False
        if self.at_sym("-"):
            self.next()
            negative = True
        elif self.at_sym("+"):
            self.next()
        while True:
            t = self.term()
            total = total - t if negative else total + t
            if self.at_sym("+"):
                self.next()
                negative = False
            elif self.at_sym("-"):
                self.next()
                negative = True
            else:
                return total

    def term(self) -> LPAElement:
        kind, val, _ = self.peek()
        if kind == "number":
            coeff = self.scalar()
            out = unit(self.quiver, self.field).scaled(coeff)
            kind, val, _ = self.peek()
            if (kind == "name") or (kind == "sym" and val == "("):
                out = mul(self.quiver, out, self.factor())
        else:
            out = self.factor()
        while self.at_sym("."):
            self.next()
            out = mul(self.quiver, out, self.factor())
        return out

    def factor(self) -> LPAElement:
        kind, val, pos = self.peek()
        if kind == "number":
            return unit(self.quiver, self.field).scaled(self.scalar())
        if kind == "sym" and val == "(":
            self.next()
            out = self.element()
            self.expect_sym(")")
            return out
        if kind == "name":
            if val == "e":
                nxt = self.tokens[self.i + 1] if self.i + 1 < len(self.tokens) else None
                if nxt and nxt[0] == "sym" and nxt[1] == "(":
                    self.next()
                    self.expect_sym("(")
                    _, v, vpos = self.next()
                    if v not in self.quiver.special:
                        raise ExprError(f"unknown vertex {v!r} at position {vpos}")
                    self.expect_sym(")")
                    return idempotent(self.quiver, v, self.field)
            self.next()
            if val not in self.quiver.arrows:
                raise ExprError(f"unknown arrow {val!r} at position {pos}")
            if self.at_sym("*"):
                self.next()
                return ghost_element(self.quiver, val, self.field)
            return arrow_element(self.quiver, val, self.field)
        raise ExprError(f"unexpected token {val!r} at position {pos}")

    # -- vector grammar ------------------------------------------------

    def vector(self) -> ChainVector:
        total = ChainVector.zero()
        negative = False
        if self.at_sym("-"):
            self.next()
            negative = True
        elif self.at_sym("+"):
            self.next()
        while True:
            t = self.vector_term()
            total = total - t if negative else total + t
            if self.at_sym("+"):
                self.next()
                negative = False
            elif self.at_sym("-"):
                self.next()
                negative = True
            else:
                return total

    def vector_term(self) -> ChainVector:
        coeff = self.field.one()
        if self.peek()[0] == "number":
            coeff = self.scalar()
            self.expect_sym("*")
        kind, val, pos = self.next()
        if kind != "name" or val not in ("E", "G"):
            raise ExprError(f"expected socle symbol E(...) or G(...) at position {pos}")
        socle_kind = val
        self.expect_sym("(")
        _, label, lpos = self.next()
        self.expect_sym(")")
        if socle_kind == "E" and label not in self.quiver.special:
            raise ExprError(f"unknown vertex {label!r} at position {lpos}")
        if socle_kind == "G" and label not in self.quiver.arrows:
            raise ExprError(f"unknown arrow {label!r} at position {lpos}")
        kind, val, pos = self.next()
        if kind != "name" or val != "zeta":
            raise ExprError(f"expected 'zeta' at position {pos}")
        self.expect_sym("(")
        p = self.path()
        self.expect_sym(";")
        q = self.path()
        self.expect_sym(")")
        try:
            b = make_basis_vector(self.quiver, Socle(socle_kind, label), AdmissiblePair(p, q))
        except ValueError as exc:
            raise ExprError(str(exc)) from exc
        return ChainVector.single(b, coeff)


def parse_element(text: str, quiver: Quiver, field=RATIONALS) -> LPAElement:
    parser = _Parser(text, quiver, field)
    out = parser.element()
    parser.done()
    return out


def parse_vector(text: str, quiver: Quiver, field=RATIONALS) -> ChainVector:
    parser = _Parser(text, quiver, field)
    out = parser.vector()
    parser.done()
    return out


# -- formatting -------------------------------------------------------------

def format_path(p: Path) -> str:
    if p.is_trivial:
        return f"e({p.source})"
    return ".".join(reversed(p.arrows))


def format_pair(pair: AdmissiblePair) -> str:
    return f"({format_path(pair.p)} ; {format_path(pair.q)})"


def _monomial_word(pair: AdmissiblePair) -> str:
    atoms = [a + "*" for a in pair.p.arrows] + [a for a in reversed(pair.q.arrows)]
    if not atoms:
        return f"e({pair.q.source})"
    return " . ".join(atoms)


def _split_sign(c):
    if isinstance(c, (Fraction, int)):
        return (abs(c), c < 0)
    return (c, False)


def format_scalar(c) -> str:
    return str(c)


def format_element(el: LPAElement) -> str:
    if not el:
        return "0"
    chunks = []
    for pair in sorted(el.terms, key=pair_key):
        mag, neg = _split_sign(el.terms[pair])
        body = _monomial_word(pair)
        if mag != 1:
            body = f"{format_scalar(mag)} {body}"
        chunks.append(("- " if neg else "+ ") + body)
    text = " ".join(chunks)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def format_socle(s: Socle) -> str:
    return f"{s.kind}({s.label})"


def format_basis_vector(b: BasisVector) -> str:
    return f"{format_socle(b.socle)} zeta({format_path(b.pair.p)} ; {format_path(b.pair.q)})"


def format_vector(v: ChainVector, quiver: Quiver) -> str:
    if not v:
        return "0"
    chunks = []
    for b in sorted(v.terms, key=lambda b: basis_key(quiver, b)):
        mag, neg = _split_sign(v.terms[b])
        body = f"{format_scalar(mag)} * {format_basis_vector(b)}"
        chunks.append(("- " if neg else "+ ") + body)
    text = " ".join(chunks)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]
