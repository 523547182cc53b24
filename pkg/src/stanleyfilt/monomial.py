"""Monomials, monomial ideals and prime monomial ideals.

A monomial is a plain tuple of non-negative exponents.  Variables are indexed
from 0 internally and printed as ``x1 .. xn``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

Monomial = tuple[int, ...]

MAX_VARIABLES = 8
MAX_EXPONENT = 2**31 - 1


class DimensionMismatch(ValueError):
    pass


class ExponentOverflow(OverflowError):
    pass


class ParseError(ValueError):
    """Syntax error in ideal or monomial text; ``pos`` is the 0-based offset."""

    def __init__(self, message: str, pos: int) -> None:
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


def _check_dims(a: Sequence[int], b: Sequence[int]) -> None:
    if len(a) != len(b):
        raise DimensionMismatch(f"monomials of length {len(a)} and {len(b)}")


def _checked(m: Iterable[int]) -> Monomial:
    out = tuple(m)
    for e in out:
        if e > MAX_EXPONENT:
            raise ExponentOverflow(f"exponent {e} exceeds {MAX_EXPONENT}")
    return out


def one(n: int) -> Monomial:
    return (0,) * n


def var_power(n: int, k: int, e: int = 1) -> Monomial:
    """x_k^e in n variables (k is 0-based)."""
    m = [0] * n
    m[k] = e
    return tuple(m)


def degree(m: Monomial) -> int:
    return sum(m)


def support(m: Monomial) -> frozenset[int]:
    return frozenset(k for k, e in enumerate(m) if e)


def mono_divides(a: Monomial, b: Monomial) -> bool:
    _check_dims(a, b)
    return all(x <= y for x, y in zip(a, b))


def mono_colon(b: Monomial, a: Monomial) -> Monomial:
    """Generator of ((b) : a), i.e. max(b - a, 0) componentwise."""
    _check_dims(a, b)
    return tuple(y - x if y > x else 0 for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    _check_dims(a, b)
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    _check_dims(a, b)
    return _checked(x + y for x, y in zip(a, b))


def _divides(a: Monomial, b: Monomial) -> bool:
    # unchecked hot-path variant
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def minimal_generators(gens: Iterable[Monomial]) -> tuple[Monomial, ...]:
    """Drop every generator divisible by another; return them in lex order."""
    kept: list[Monomial] = []
    for g in sorted(set(gens), key=lambda m: (sum(m), m)):
        if not any(_divides(h, g) for h in kept):
            kept.append(g)
    return tuple(sorted(kept))


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal stored by its minimal generators in lex order.

    The zero ideal has no generators; the unit ideal is generated by ``1``.
    Build instances with :meth:`from_generators`, which canonicalizes.
    """

    n: int
    gens: tuple[Monomial, ...]

    @classmethod
    def from_generators(cls, n: int, gens: Iterable[Monomial]) -> MonomialIdeal:
        if not 1 <= n <= MAX_VARIABLES:
            raise ValueError(f"ring dimension {n} outside 1..{MAX_VARIABLES}")
        gens = [_checked(g) for g in gens]
        for g in gens:
            if len(g) != n:
                raise DimensionMismatch(f"generator {g} in ring of dimension {n}")
            if min(g, default=0) < 0:
                raise ValueError(f"negative exponent in {g}")
        return cls(n, minimal_generators(gens))

    @classmethod
    def unit(cls, n: int) -> MonomialIdeal:
        return cls(n, (one(n),))

    @classmethod
    def zero(cls, n: int) -> MonomialIdeal:
        return cls(n, ())

    @classmethod
    def prime(cls, n: int, variables: Iterable[int]) -> MonomialIdeal:
        return cls.from_generators(n, [var_power(n, k) for k in variables])

    @property
    def is_unit(self) -> bool:
        return self.gens == (one(self.n),)

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_proper_nonzero(self) -> bool:
        return not (self.is_unit or self.is_zero)

    def max_exponents(self) -> Monomial:
        if not self.gens:
            return one(self.n)
        return tuple(max(col) for col in zip(*self.gens))

    def __contains__(self, m: Monomial) -> bool:
        _check_dims(m, one(self.n))
        return any(_divides(g, m) for g in self.gens)

    def contains_ideal(self, other: MonomialIdeal) -> bool:
        """True iff ``other`` is a subset of this ideal."""
        return all(g in self for g in other.gens)

    def colon(self, m: Monomial) -> MonomialIdeal:
        _check_dims(m, one(self.n))
        return MonomialIdeal(self.n, minimal_generators(mono_colon(g, m) for g in self.gens))

    def add(self, m: Monomial) -> MonomialIdeal:
        _check_dims(m, one(self.n))
        return MonomialIdeal(self.n, minimal_generators(self.gens + (m,)))

    def __add__(self, other: MonomialIdeal) -> MonomialIdeal:
        if other.n != self.n:
            raise DimensionMismatch("ideals in different rings")
        return MonomialIdeal(self.n, minimal_generators(self.gens + other.gens))

    def intersect(self, other: MonomialIdeal) -> MonomialIdeal:
        if other.n != self.n:
            raise DimensionMismatch("ideals in different rings")
        return MonomialIdeal(
            self.n, minimal_generators(mono_lcm(g, h) for g in self.gens for h in other.gens)
        )

    def multiply(self, m: Monomial) -> MonomialIdeal:
        return MonomialIdeal(self.n, tuple(sorted(mono_mul(g, m) for g in self.gens)))

    def __str__(self) -> str:
        return format_ideal(self)


def ideal_minimalize(n: int, gens: Iterable[Monomial]) -> MonomialIdeal:
    return MonomialIdeal.from_generators(n, gens)


def ideal_membership(I: MonomialIdeal, m: Monomial) -> bool:
    return m in I


def ideal_intersect(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    return I.intersect(J)


def ideal_colon_monomial(I: MonomialIdeal, m: Monomial) -> MonomialIdeal:
    return I.colon(m)


def ideal_add(I: MonomialIdeal, m: Monomial) -> MonomialIdeal:
    return I.add(m)


def ideal_equals(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    return I.n == J.n and I.gens == J.gens


def intersect_all(n: int, ideals: Iterable[MonomialIdeal]) -> MonomialIdeal:
    out = MonomialIdeal.unit(n)
    for J in ideals:
        out = out.intersect(J)
    return out


@dataclass(frozen=True)
class PrimeIdeal:
    """Monomial prime ideal generated by a set of variables (0-based)."""

    n: int
    variables: frozenset[int]

    @classmethod
    def of(cls, n: int, variables: Iterable[int]) -> PrimeIdeal:
        vs = frozenset(variables)
        if any(not 0 <= k < n for k in vs):
            raise ValueError(f"variable index out of range for n={n}: {sorted(vs)}")
        return cls(n, vs)

    @property
    def height(self) -> int:
        return len(self.variables)

    @property
    def dim_quotient(self) -> int:
        return self.n - len(self.variables)

    @property
    def mask(self) -> int:
        return sum(1 << k for k in self.variables)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.height, tuple(sorted(self.variables)))

    def to_ideal(self) -> MonomialIdeal:
        return MonomialIdeal.prime(self.n, self.variables)

    def issubset(self, other: PrimeIdeal) -> bool:
        return self.variables <= other.variables

    def __str__(self) -> str:
        return format_variable_set(self.variables, parens="()")


def prime_of_ideal(I: MonomialIdeal) -> PrimeIdeal | None:
    """Return I as a PrimeIdeal if every minimal generator is a variable."""
    vs = []
    for g in I.gens:
        if sum(g) != 1:
            return None
        vs.append(g.index(1))
    return PrimeIdeal(I.n, frozenset(vs))


# ---------------------------------------------------------------- text grammar

_VARIABLE = re.compile(r"x(\d+)")
_NUMBER = re.compile(r"\d+")


def format_monomial(m: Monomial) -> str:
    parts = []
    for k, e in enumerate(m):
        if e == 1:
            parts.append(f"x{k + 1}")
        elif e > 1:
            parts.append(f"x{k + 1}^{e}")
    return "*".join(parts) if parts else "1"


def format_ideal(I: MonomialIdeal) -> str:
    """Generators from the lex-largest down, so x1*x3 prints before x2*x4."""
    return "(" + ", ".join(format_monomial(g) for g in reversed(I.gens)) + ")"


def format_variable_set(variables: Iterable[int], parens: str = "{}") -> str:
    return parens[0] + ", ".join(f"x{k + 1}" for k in sorted(variables)) + parens[1]


class _Lexer:
    def __init__(self, text: str, n: int | None = None) -> None:
        self.text = text
        self.pos = 0
        self.n = MAX_VARIABLES if n is None else n

    def _skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self) -> bool:
        self._skip_ws()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise ParseError(f"expected {ch!r}, found {found!r}", self.pos)
        self.pos += 1

    def number(self, what: str) -> int:
        self._skip_ws()
        mt = _NUMBER.match(self.text, self.pos)
        if mt is None:
            raise ParseError(f"expected {what}", self.pos)
        self.pos = mt.end()
        return int(mt.group())

    def factor(self) -> tuple[int, int] | None:
        """Parse one ``x<k>[^e]`` or ``1``; None for the identity."""
        self._skip_ws()
        start = self.pos
        mt = _VARIABLE.match(self.text, self.pos)
        if mt is None:
            if self.text.startswith("1", self.pos) and not _NUMBER.match(self.text, self.pos + 1):
                self.pos += 1
                return None
            raise ParseError("expected a variable power or 1", self.pos)
        self.pos = mt.end()
        k = int(mt.group(1))
        if k < 1:
            raise ParseError("variable indices start at 1", start)
        if k > self.n:
            raise ParseError(f"variable x{k} exceeds ring dimension {self.n}", start)
        e = 1
        if self.peek() == "^":
            self.pos += 1
            e = self.number("an exponent after '^'")
        return k - 1, e


def _parse_monomial_tokens(lex: _Lexer) -> dict[int, int]:
    exps: dict[int, int] = {}
    while True:
        f = lex.factor()
        if f is not None:
            exps[f[0]] = exps.get(f[0], 0) + f[1]
        if lex.peek() != "*":
            return exps
        lex.pos += 1


def _to_monomial(exps: dict[int, int], n: int) -> Monomial:
    m = [0] * n
    for k, e in exps.items():
        m[k] = e
    return _checked(m)


def parse_monomial(text: str, n: int | None = None) -> Monomial:
    lex = _Lexer(text, n)
    exps = _parse_monomial_tokens(lex)
    if not lex.at_end():
        raise ParseError("trailing input", lex.pos)
    if n is None:
        n = max(exps, default=0) + 1
    return _to_monomial(exps, n)


def _parse_ideal_raw(text: str, n: int | None = None) -> list[dict[int, int]]:
    lex = _Lexer(text, n)
    lex.expect("(")
    out: list[dict[int, int]] = []
    if lex.peek() == ")":
        lex.pos += 1
    else:
        while True:
            out.append(_parse_monomial_tokens(lex))
            if lex.peek() == ",":
                lex.pos += 1
                continue
            lex.expect(")")
            break
    if not lex.at_end():
        raise ParseError("trailing input", lex.pos)
    return out


def infer_n(text: str) -> int:
    """Smallest ring dimension containing every variable in an ideal text."""
    raw = _parse_ideal_raw(text)
    return max((max(e, default=-1) for e in raw), default=-1) + 1 or 1


def parse_ideal(text: str, n: int | None = None) -> MonomialIdeal:
    """Parse ``(x1^2*x2, x3*x4)``; ``()`` is the zero ideal, ``(1)`` the unit ideal."""
    raw = _parse_ideal_raw(text, n)
    if n is None:
        n = max((max(e, default=-1) for e in raw), default=-1) + 1 or 1
    return MonomialIdeal.from_generators(n, [_to_monomial(e, n) for e in raw])


def parse_variable_set(text: str, n: int) -> frozenset[int]:
    """Parse ``{x1, x3}`` or ``(x1, x3)``; ``{}`` is the empty set."""
    lex = _Lexer(text, n)
    close = {"{": "}", "(": ")"}.get(lex.peek())
    if close is None:
        raise ParseError("expected '{' or '('", lex.pos)
    lex.pos += 1
    out: set[int] = set()
    if lex.peek() == close:
        lex.pos += 1
    else:
        while True:
            start = lex.pos
            exps = _parse_monomial_tokens(lex)
            if len(exps) != 1 or next(iter(exps.values())) != 1:
                raise ParseError("expected a single variable", start)
            out.add(next(iter(exps)))
            if lex.peek() == ",":
                lex.pos += 1
                continue
            lex.expect(close)
            break
    if not lex.at_end():
        raise ParseError("trailing input", lex.pos)
    return frozenset(out)
