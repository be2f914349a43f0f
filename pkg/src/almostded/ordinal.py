"""Ordinals below w^w in Cantor normal form.

An ordinal is stored as a tuple of ``(exponent, coefficient)`` pairs with
strictly decreasing exponents and positive coefficients.  Because of that
layout, plain tuple comparison coincides with the ordinal order, which keeps
comparisons cheap.
"""
from __future__ import annotations

import re
from functools import lru_cache, total_ordering
from typing import Iterable, Tuple

Terms = Tuple[Tuple[int, int], ...]


class OrdinalParseError(ValueError):
    """Malformed ordinal literal.  ``token`` is the offending piece of text."""

    def __init__(self, message: str, token: str):
        super().__init__(f"{message}: {token!r}")
        self.token = token


@total_ordering
class Ordinal:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Iterable[Tuple[int, int]] = ()):
        terms = tuple((int(e), int(c)) for e, c in terms)
        for i, (e, c) in enumerate(terms):
            if e < 0 or c < 1:
                raise ValueError(f"bad CNF term {(e, c)}")
            if i and terms[i - 1][0] <= e:
                raise ValueError("CNF exponents must be strictly decreasing")
        self.terms: Terms = terms
        self._hash = hash(terms)

    @classmethod
    def _raw(cls, terms: Terms) -> "Ordinal":
        obj = object.__new__(cls)
        obj.terms = terms
        obj._hash = hash(terms)
        return obj

    @classmethod
    def of(cls, n: int) -> "Ordinal":
        if n < 0:
            raise ValueError("negative ordinal")
        return cls._raw(((0, n),) if n else ())

    @classmethod
    def omega_pow(cls, e: int, c: int = 1) -> "Ordinal":
        return cls._raw(((e, c),))

    # -- order ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Ordinal):
            return self.terms == other.terms
        if isinstance(other, int):
            return self.terms == Ordinal.of(other).terms if other >= 0 else False
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, int):
            other = Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms < other.terms

    def __hash__(self):
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other: "Ordinal") -> "Ordinal":
        if isinstance(other, int):
            other = Ordinal.of(other)
        return ord_add(self, other)

    def __mul__(self, n: int) -> "Ordinal":
        # right multiplication by a natural number only
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            raise ValueError("negative multiplier")
        if n == 0 or not self.terms:
            return ZERO
        (e, c), rest = self.terms[0], self.terms[1:]
        return Ordinal._raw(((e, c * n),) + rest)

    @property
    def deg(self) -> int:
        return self.terms[-1][0] if self.terms else 0

    @property
    def lead(self) -> int:
        """Exponent of the leading term (0 for zero)."""
        return self.terms[0][0] if self.terms else 0

    def is_limit(self) -> bool:
        return bool(self.terms) and self.terms[-1][0] >= 1

    def coeff(self, e: int) -> int:
        for ee, c in self.terms:
            if ee == e:
                return c
        return 0

    def __repr__(self):
        return f"Ordinal({ord_print(self)!r})"

    def __str__(self):
        return ord_print(self)


ZERO = Ordinal._raw(())
ONE = Ordinal.of(1)
OMEGA = Ordinal.omega_pow(1)


def ord_cmp(a: Ordinal, b: Ordinal) -> int:
    return (a.terms > b.terms) - (a.terms < b.terms)


def ord_add(a: Ordinal, b: Ordinal) -> Ordinal:
    if not b.terms:
        return a
    e = b.terms[0][0]
    head = [t for t in a.terms if t[0] > e]
    rest = list(b.terms)
    for ee, c in a.terms:
        if ee == e:
            rest[0] = (e, c + rest[0][1])
    return Ordinal._raw(tuple(head + rest))


def ord_succ(a: Ordinal) -> Ordinal:
    return ord_add(a, ONE)


def ord_deg(a: Ordinal) -> int:
    return a.deg


def ord_is_limit(a: Ordinal) -> bool:
    return a.is_limit()


@lru_cache(maxsize=1 << 16)
def next_multiple(a: Ordinal, d: int) -> Ordinal:
    """Least ordinal ``x > a`` divisible by ``w^d``; it has degree exactly d."""
    kept = [t for t in a.terms if t[0] >= d]
    if kept and kept[-1][0] == d:
        kept[-1] = (d, kept[-1][1] + 1)
    else:
        kept.append((d, 1))
    return Ordinal._raw(tuple(kept))


def predecessor_base(x: Ordinal) -> Ordinal:
    """For ``x = b + w^e`` (e the degree of x) return ``b``.

    The interval ``(b, x]`` then contains no other point of degree >= e.
    """
    if not x.terms:
        raise ValueError("zero has no predecessor base")
    e, c = x.terms[-1]
    if c == 1:
        return Ordinal._raw(x.terms[:-1])
    return Ordinal._raw(x.terms[:-1] + ((e, c - 1),))


def approach(x: Ordinal, depth: int, d: int = 0) -> Ordinal:
    """A point of degree ``d`` strictly below the limit ``x``, close to it.

    ``depth`` controls how close: the point is ``b + w^(e-1)*depth + w^d``
    where ``x = b + w^e``.  Larger depth means closer to ``x``.
    """
    e = x.deg
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if e < 1 or d >= e:
        raise ValueError("approach needs a limit ordinal and d < deg")
    base = predecessor_base(x)
    if e - 1 == d:
        return ord_add(base, Ordinal.omega_pow(d, depth + 1))
    return ord_add(ord_add(base, Ordinal.omega_pow(e - 1, depth)), Ordinal.omega_pow(d))


# -- text form -------------------------------------------------------------

_TERM = re.compile(r"^(?:w(?:\^(\d+))?(?:\*(\d+))?|(\d+))$")


def ord_parse(text: str) -> Ordinal:
    if not isinstance(text, str):
        raise OrdinalParseError("ordinal literal must be a string", repr(text))
    s = text.replace(" ", "")
    if s == "":
        raise OrdinalParseError("empty ordinal literal", text)
    if s == "0":
        return ZERO
    terms = []
    for tok in s.split("+"):
        if not tok:
            raise OrdinalParseError("empty term", text)
        m = _TERM.match(tok)
        if not m:
            raise OrdinalParseError("malformed term", tok)
        exp, mult, nat = m.groups()
        if nat is not None:
            e, c = 0, int(nat)
        else:
            e = int(exp) if exp is not None else 1
            c = int(mult) if mult is not None else 1
        if c < 1:
            raise OrdinalParseError("coefficient must be >= 1", tok)
        if terms and terms[-1][0] <= e:
            raise OrdinalParseError("exponents not strictly decreasing", tok)
        terms.append((e, c))
    return Ordinal._raw(tuple(terms))


def ord_print(a: Ordinal) -> str:
    if not a.terms:
        return "0"
    parts = []
    for e, c in a.terms:
        if e == 0:
            parts.append(str(c))
            continue
        base = "w" if e == 1 else f"w^{e}"
        parts.append(base if c == 1 else f"{base}*{c}")
    return "+".join(parts)


def as_ordinal(x) -> Ordinal:
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int):
        return Ordinal.of(x)
    if isinstance(x, str):
        return ord_parse(x)
    raise TypeError(f"cannot interpret {x!r} as an ordinal")
