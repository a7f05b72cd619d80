"""Functional identities linear in one unknown additive map.

An identity is an equation between formal sums of terms. A term is an
integer coefficient times an ordered product of factors; a factor is either a
ring variable or a map applied to a product of variables::

    2*T(x*y*x) = T(x)*y*x + x*y*T(x)

Grammar of the textual form (whitespace is ignored)::

    law      := equation (';' equation)*
    equation := side '=' side
    side     := '0' | ['-'] term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := INT | VAR ['^' INT] | SLOT '(' VAR ['^' INT] ('*' VAR ['^' INT])* ')'
    VAR      := [a-z][a-z0-9_]*
    SLOT     := [A-Z][A-Za-z0-9_]*

Integer factors multiply into the term coefficient and ``x^2`` is shorthand
for ``x*x``. A law is a conjunction of identities sharing the unknown slot.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

DEFAULT_UNKNOWN = "T"


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class MapApp:
    slot: str
    args: tuple[str, ...]

    def __post_init__(self):
        if not self.args:
            raise ValueError(f"{self.slot}() needs an argument")

    def __str__(self) -> str:
        return f"{self.slot}({'*'.join(self.args)})"


Factor = Union[Var, MapApp]


@dataclass(frozen=True)
class Term:
    coefficient: int
    factors: tuple[Factor, ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("a term needs at least one factor")

    def occurrences(self, var: str) -> int:
        count = 0
        for f in self.factors:
            if isinstance(f, Var):
                count += f.name == var
            else:
                count += f.args.count(var)
        return count

    def applications(self, slot: str) -> int:
        return sum(isinstance(f, MapApp) and f.slot == slot for f in self.factors)

    def body(self) -> str:
        return "*".join(str(f) for f in self.factors)


def _format_side(terms: tuple[Term, ...]) -> str:
    if not terms:
        return "0"
    out = []
    for pos, term in enumerate(terms):
        c = term.coefficient
        mag = abs(c)
        text = term.body() if mag == 1 else f"{mag}*{term.body()}"
        if pos == 0:
            out.append(f"-{text}" if c < 0 else text)
        else:
            out.append(f"- {text}" if c < 0 else f"+ {text}")
    return " ".join(out)


@dataclass(frozen=True)
class Identity:
    """``lhs = rhs`` with at most one application of ``unknown`` per term."""

    lhs: tuple[Term, ...]
    rhs: tuple[Term, ...]
    unknown: str = DEFAULT_UNKNOWN

    def __post_init__(self):
        terms = self.lhs + self.rhs
        for term in terms:
            if term.applications(self.unknown) > 1:
                raise ValueError(f"term {term.body()} is not linear in {self.unknown}")
        if not any(term.applications(self.unknown) for term in terms):
            raise ValueError(f"identity does not involve the unknown map {self.unknown}")

    def __str__(self) -> str:
        return f"{_format_side(self.lhs)} = {_format_side(self.rhs)}"

    @property
    def terms(self) -> tuple[Term, ...]:
        return self.lhs + self.rhs

    @property
    def variables(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for term in self.terms:
            for f in term.factors:
                for name in ([f.name] if isinstance(f, Var) else f.args):
                    seen.setdefault(name, None)
        return tuple(seen)

    @property
    def slots(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for term in self.terms:
            for f in term.factors:
                if isinstance(f, MapApp):
                    seen.setdefault(f.slot, None)
        return tuple(seen)

    @property
    def known_slots(self) -> tuple[str, ...]:
        return tuple(s for s in self.slots if s != self.unknown)

    def degree(self, var: str) -> int:
        return max(term.occurrences(var) for term in self.terms)

    def is_homogeneous_in(self, var: str) -> bool:
        return len({term.occurrences(var) for term in self.terms}) == 1


Law = tuple[Identity, ...]


def format_law(law: Law) -> str:
    return "; ".join(str(identity) for identity in law)


# parser ---------------------------------------------------------------------


class IdentitySyntaxError(ValueError):
    """Malformed identity text."""


_TOKEN = re.compile(r"\s*(?:(\d+)|([a-z][a-z0-9_]*)|([A-Z][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        pos = m.end()
        num, var, slot, sym = m.groups()
        if num is not None:
            tokens.append(("int", num))
        elif var is not None:
            tokens.append(("var", var))
        elif slot is not None:
            tokens.append(("slot", slot))
        elif sym is not None and not sym.isspace():
            if sym not in "+-*=()^;":
                raise IdentitySyntaxError(f"unexpected character {sym!r} in {text!r}")
            tokens.append(("sym", sym))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, kind: str, value: str | None = None) -> str:
        tok = self.peek()
        if tok is None or tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] if tok else "end of input"
            raise IdentitySyntaxError(f"expected {want!r}, got {got!r} in {self.text!r}")
        self.pos += 1
        return tok[1]

    def accept(self, kind: str, value: str) -> bool:
        tok = self.peek()
        if tok is not None and tok == (kind, value):
            self.pos += 1
            return True
        return False

    def power(self) -> int:
        if self.accept("sym", "^"):
            exp = int(self.take("int"))
            if exp < 1:
                raise IdentitySyntaxError(f"exponent must be positive in {self.text!r}")
            return exp
        return 1

    def factor(self) -> tuple[int, list[Factor]]:
        tok = self.peek()
        if tok is None:
            raise IdentitySyntaxError(f"unexpected end of {self.text!r}")
        kind, value = tok
        if kind == "int":
            self.pos += 1
            return int(value), []
        if kind == "var":
            self.pos += 1
            return 1, [Var(value)] * self.power()
        if kind == "slot":
            self.pos += 1
            self.take("sym", "(")
            args = []
            while True:
                name = self.take("var")
                args.extend([name] * self.power())
                if not self.accept("sym", "*"):
                    break
            self.take("sym", ")")
            return 1, [MapApp(value, tuple(args))]
        raise IdentitySyntaxError(f"unexpected {value!r} in {self.text!r}")

    def term(self, sign: int) -> Term:
        coeff = sign
        factors: list[Factor] = []
        while True:
            c, fs = self.factor()
            coeff *= c
            factors.extend(fs)
            if not self.accept("sym", "*"):
                break
        if not factors:
            raise IdentitySyntaxError(f"bare constant term in {self.text!r}")
        return Term(coeff, tuple(factors))

    def side(self) -> tuple[Term, ...]:
        tok = self.peek()
        after = self.tokens[self.pos + 1] if self.pos + 1 < len(self.tokens) else None
        if tok == ("int", "0") and (after is None or after[1] in ("=", ";")):
            self.pos += 1
            return ()
        sign = -1 if self.accept("sym", "-") else 1
        terms = [self.term(sign)]
        while True:
            if self.accept("sym", "+"):
                terms.append(self.term(1))
            elif self.accept("sym", "-"):
                terms.append(self.term(-1))
            else:
                return tuple(terms)

    def equation(self, unknown: str) -> Identity:
        lhs = self.side()
        self.take("sym", "=")
        rhs = self.side()
        try:
            return Identity(lhs, rhs, unknown)
        except ValueError as exc:
            raise IdentitySyntaxError(str(exc)) from exc


def parse_law(text: str, unknown: str = DEFAULT_UNKNOWN) -> Law:
    p = _Parser(text)
    law = [p.equation(unknown)]
    while p.accept("sym", ";"):
        law.append(p.equation(unknown))
    if p.peek() is not None:
        raise IdentitySyntaxError(f"trailing input {p.peek()[1]!r} in {text!r}")
    return tuple(law)


def parse_identity(text: str, unknown: str = DEFAULT_UNKNOWN) -> Identity:
    law = parse_law(text, unknown)
    if len(law) != 1:
        raise IdentitySyntaxError(f"expected a single equation in {text!r}")
    return law[0]


# catalog ----------------------------------------------------------------------

_CATALOG = {
    "left-centralizer": "T(x*y) = T(x)*y",
    "right-centralizer": "T(x*y) = x*T(y)",
    "two-sided-centralizer": "T(x*y) = T(x)*y; T(x*y) = x*T(y)",
    "jordan-left": "T(x*x) = T(x)*x",
    "jordan-right": "T(x*x) = x*T(x)",
    "jordan-left-polar": "T(x*y) + T(y*x) = T(x)*y + T(y)*x",
    "jordan-right-polar": "T(x*y) + T(y*x) = x*T(y) + y*T(x)",
    "vukman-1999": "2*T(x*x) = T(x)*x + x*T(x)",
    "vukman-1999-polar": "2*T(x*y) + 2*T(y*x) = T(x)*y + T(y)*x + x*T(y) + y*T(x)",
    "vukman-1999-t0": "2*T(x*x) = T(x)*x + x*T0(x)",
    "vukman-2001": "2*T(x*y*x) = x*T(y)*x",
    "vukman-ulbl-2003a": "2*T(x*y*x) = T(x)*y*x + x*y*T(x)",
    "vukman-ulbl-2003b": "3*T(x*y*x) = T(x)*y*x + x*T(y)*x + x*y*T(x)",
    "vukman-ulbl-2003b-polar": (
        "3*T(x*y*z) + 3*T(z*y*x) = T(x)*y*z + T(z)*y*x + x*T(y)*z + z*T(y)*x + x*y*T(z) + z*y*T(x)"
    ),
}

DEFAULT_MN = ((1, 1), (1, 2), (2, 1))

_MN_KEY = re.compile(r"^mn-jordan\((\d+),(\d+)\)$")


def mn_jordan(m: int, n: int) -> Law:
    """``(m+n) T(x^2) = m T(x) x + n x T0(x)`` for positive integers ``m, n``."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    return parse_law(f"{m + n}*T(x*x) = {m}*T(x)*x + {n}*x*T0(x)")


def builtin_identities() -> dict[str, Law]:
    catalog = {key: parse_law(text) for key, text in _CATALOG.items()}
    for m, n in DEFAULT_MN:
        catalog[f"mn-jordan({m},{n})"] = mn_jordan(m, n)
    return dict(sorted(catalog.items()))


def get_law(key_or_text: str) -> Law:
    """Resolve a catalog key (including any ``mn-jordan(m,n)``) or parse DSL text."""
    key = key_or_text.replace(" ", "")
    if key in _CATALOG:
        return parse_law(_CATALOG[key])
    m = _MN_KEY.match(key)
    if m:
        return mn_jordan(int(m.group(1)), int(m.group(2)))
    if "=" not in key_or_text:
        raise KeyError(f"unknown identity {key_or_text!r}")
    return parse_law(key_or_text)
