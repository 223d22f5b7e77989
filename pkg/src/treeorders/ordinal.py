"""Ordinals below omega^omega in Cantor normal form, and their embedding into Q."""

from __future__ import annotations

import re
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Sequence

from .common import DomainError


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    """``terms`` is a tuple of ``(exponent, coefficient)`` with strictly
    decreasing exponents and positive coefficients; ``()`` is zero."""

    terms: tuple = ()

    def __post_init__(self):
        prev = None
        for e, c in self.terms:
            if not (isinstance(e, int) and isinstance(c, int)) or e < 0 or c < 1:
                raise ValueError(f"bad CNF term {(e, c)!r}")
            if prev is not None and e >= prev:
                raise ValueError("CNF exponents must strictly decrease")
            prev = e

    @classmethod
    def of(cls, n: int) -> "Ordinal":
        if n < 0:
            raise ValueError("negative ordinal")
        return cls(((0, n),)) if n else cls()

    @classmethod
    def omega(cls, coefficient: int = 1, exponent: int = 1) -> "Ordinal":
        return cls(((exponent, coefficient),))

    # Tuple order on CNF terms is exactly ordinal order.
    def __lt__(self, other):
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms < other.terms

    def __add__(self, other):
        if isinstance(other, int):
            other = Ordinal.of(other)
        return ord_add(self, other)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return all(e == 0 for e, _ in self.terms)

    def finite_value(self) -> int:
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    def __str__(self) -> str:
        return format_ordinal(self)

    def __repr__(self) -> str:
        return f"Ordinal({format_ordinal(self)!r})"


ZERO = Ordinal()
OMEGA = Ordinal.omega()


def ord_compare(a: Ordinal, b: Ordinal) -> int:
    """-1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    return (a.terms > b.terms) - (a.terms < b.terms)


def ord_add(a: Ordinal, b: Ordinal) -> Ordinal:
    if b.is_zero:
        return a
    lead = b.terms[0][0]
    kept = [t for t in a.terms if t[0] > lead]
    merged = list(b.terms)
    for e, c in a.terms:
        if e == lead:
            merged[0] = (lead, c + merged[0][1])
    return Ordinal(tuple(kept + merged))


def is_limit(a: Ordinal) -> bool:
    return bool(a.terms) and a.terms[-1][0] >= 1


def is_successor(a: Ordinal) -> bool:
    return bool(a.terms) and a.terms[-1][0] == 0


def format_ordinal(a: Ordinal) -> str:
    if a.is_zero:
        return "0"
    parts = []
    for e, c in a.terms:
        if e == 0:
            parts.append(str(c))
            continue
        base = "w" if e == 1 else f"w^{e}"
        parts.append(base if c == 1 else f"{base}*{c}")
    return "+".join(parts)


_TERM = re.compile(r"^(?:w(?:\^(\d+))?(?:\*(\d+))?|(\d+))$")


def parse_ordinal(text: str) -> Ordinal:
    """Parse ``w^2*3+w*1+5`` style syntax (``w`` stands for omega)."""
    text = text.replace(" ", "")
    if not text:
        raise ValueError("empty ordinal")
    total = ZERO
    for piece in text.split("+"):
        m = _TERM.match(piece)
        if not m:
            raise ValueError(f"bad ordinal term {piece!r}")
        if m.group(3) is not None:
            term = Ordinal.of(int(m.group(3)))
        else:
            e = int(m.group(1)) if m.group(1) is not None else 1
            c = int(m.group(2)) if m.group(2) is not None else 1
            if c == 0:
                term = ZERO
            elif e == 0:
                term = Ordinal.of(c)
            else:
                term = Ordinal.omega(c, e)
        total = ord_add(total, term)
    return total


def embed_q(seq: Sequence[Ordinal]) -> list[Fraction]:
    """Place the enumerated ordinals into Q one at a time.

    Element ``n`` goes strictly between its placed neighbours, and when it has
    an upper neighbour ``U`` the gap ``U - image`` is below ``1/(n+1)``.  Each
    image depends only on the prefix of the enumeration, so extending the
    enumeration never moves an existing image.
    """
    placed_keys: list[Ordinal] = []
    placed_vals: list[Fraction] = []
    out: list[Fraction] = []
    for n, beta in enumerate(seq):
        i = bisect_left(placed_keys, beta)
        if i < len(placed_keys) and placed_keys[i] == beta:
            raise DomainError(f"duplicate ordinal {beta} at index {n}")
        lower = placed_vals[i - 1] if i > 0 else None
        upper = placed_vals[i] if i < len(placed_vals) else None
        bound = Fraction(1, n + 1)
        if lower is None and upper is None:
            v = Fraction(0)
        elif upper is None:
            v = lower + 1
        elif lower is None:
            v = upper - bound / 2
        else:
            v = upper - min(upper - lower, bound) / 2
        placed_keys.insert(i, beta)
        placed_vals.insert(i, v)
        out.append(v)
    return out
